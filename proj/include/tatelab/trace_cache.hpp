// Copyright 2026 The tate-lab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// On-disk trace cache. One file per curve:
//
//   curve,A,B
//   p,a_p
//   ...
//
// with primes strictly increasing and every good prime up to the last entry
// present. Extension only appends larger primes.

#ifndef TATELAB_TRACE_CACHE_HPP_
#define TATELAB_TRACE_CACHE_HPP_

#include <cstddef>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "tatelab/curves.hpp"

namespace tatelab {

/// A cache file that fails validation. Never repaired automatically.
class CacheError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TraceCache {
  i64 A;
  i64 B;
  std::vector<std::pair<u64, i64>> entries;
};

std::filesystem::path cache_path(const std::filesystem::path& dir,
                                 const CurveQ& curve);

/// Parses and validates; throws CacheError on any malformed, unsorted,
/// non-Hasse or incomplete content.
TraceCache parse_cache(const std::string& text, const std::string& origin);
std::string serialize_cache(const TraceCache& cache);

struct CacheResult {
  std::vector<TraceRecord> records;  // good primes 3 < p <= X
  std::size_t reused;
  std::size_t computed;
};

/// Reads the cache for `curve` under `dir` (exclusive lock held for the whole
/// call), computes only primes beyond the last cached one, and rewrites the
/// file when it grew. Throws CacheError when the existing file is corrupt or
/// belongs to another curve.
CacheResult cache_read_write(const CurveQ& curve, u64 bound,
                             const std::filesystem::path& dir,
                             unsigned workers = 0);

}  // namespace tatelab

#endif  // TATELAB_TRACE_CACHE_HPP_
