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

#include "tatelab/trace_cache.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <charconv>
#include <fstream>
#include <sstream>

namespace tatelab {

namespace {

template <typename T>
bool parse_number(std::string_view s, T& out) {
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

class FileLock {
 public:
  explicit FileLock(const std::filesystem::path& path)
      : fd_(::open(path.c_str(), O_RDWR | O_CREAT, 0644)) {
    if (fd_ < 0) throw CacheError("cannot open lock file " + path.string());
    if (::flock(fd_, LOCK_EX) != 0) {
      ::close(fd_);
      throw CacheError("cannot lock " + path.string());
    }
  }
  ~FileLock() {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
  FileLock(const FileLock&) = delete;
  FileLock& operator=(const FileLock&) = delete;

 private:
  int fd_;
};

}  // namespace

std::filesystem::path cache_path(const std::filesystem::path& dir,
                                 const CurveQ& curve) {
  return dir / ("curve_" + std::to_string(curve.A()) + "_" +
                std::to_string(curve.B()) + ".csv");
}

TraceCache parse_cache(const std::string& text, const std::string& origin) {
  std::istringstream in(text);
  std::string line;
  const auto fail = [&](const std::string& why) {
    throw CacheError("corrupt trace cache " + origin + ": " + why);
  };
  if (!std::getline(in, line)) fail("missing header");
  TraceCache cache{};
  {
    const std::size_t c1 = line.find(',');
    const std::size_t c2 = line.find(',', c1 == std::string::npos ? c1 : c1 + 1);
    if (line.substr(0, c1) != "curve" || c2 == std::string::npos ||
        !parse_number(std::string_view(line).substr(c1 + 1, c2 - c1 - 1),
                      cache.A) ||
        !parse_number(std::string_view(line).substr(c2 + 1), cache.B)) {
      fail("bad header '" + line + "'");
    }
  }
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t comma = line.find(',');
    u64 p = 0;
    i64 a = 0;
    if (comma == std::string::npos ||
        !parse_number(std::string_view(line).substr(0, comma), p) ||
        !parse_number(std::string_view(line).substr(comma + 1), a)) {
      fail("line " + std::to_string(lineno) + " is not 'p,a_p'");
    }
    if (!cache.entries.empty() && p <= cache.entries.back().first) {
      fail("primes not strictly increasing at line " + std::to_string(lineno));
    }
    if (p <= 3 || !is_prime(p)) {
      fail(std::to_string(p) + " is not a prime > 3");
    }
    if (!within_hasse(p, a)) {
      fail("Hasse bound violated at line " + std::to_string(lineno) + " (" +
           line + ")");
    }
    cache.entries.emplace_back(p, a);
  }
  // Every good prime up to the last entry must be present.
  try {
    const CurveQ curve(cache.A, cache.B);
    if (!cache.entries.empty()) {
      std::size_t k = 0;
      for (u64 p : sweep_primes(cache.entries.back().first)) {
        if (curve.is_bad_prime(p)) {
          if (k < cache.entries.size() && cache.entries[k].first == p) {
            fail("entry for bad prime " + std::to_string(p));
          }
          continue;
        }
        if (k >= cache.entries.size() || cache.entries[k].first != p) {
          fail("missing good prime " + std::to_string(p));
        }
        ++k;
      }
    }
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  return cache;
}

std::string serialize_cache(const TraceCache& cache) {
  std::string out = "curve," + std::to_string(cache.A) + "," +
                    std::to_string(cache.B) + "\n";
  for (const auto& [p, a] : cache.entries) {
    out += std::to_string(p) + "," + std::to_string(a) + "\n";
  }
  return out;
}

CacheResult cache_read_write(const CurveQ& curve, u64 bound,
                             const std::filesystem::path& dir,
                             unsigned workers) {
  std::filesystem::create_directories(dir);
  const std::filesystem::path path = cache_path(dir, curve);
  const FileLock lock(path.string() + ".lock");

  TraceCache cache{curve.A(), curve.B(), {}};
  if (std::filesystem::exists(path)) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream text;
    text << in.rdbuf();
    cache = parse_cache(text.str(), path.string());
    if (cache.A != curve.A() || cache.B != curve.B()) {
      throw CacheError("trace cache " + path.string() +
                       " belongs to another curve");
    }
  }

  const u64 last = cache.entries.empty() ? 3 : cache.entries.back().first;
  std::vector<u64> fresh;
  for (u64 p : sweep_primes(bound)) {
    if (p > last) fresh.push_back(p);
  }
  const std::vector<TraceRecord> computed =
      trace_records_for(curve, fresh, workers);

  CacheResult result{{}, 0, computed.size()};
  for (const auto& [p, a] : cache.entries) {
    if (p > bound) break;
    result.records.push_back(make_trace_record(p, a));
    ++result.reused;
  }
  result.records.insert(result.records.end(), computed.begin(), computed.end());

  if (!computed.empty()) {
    for (const TraceRecord& r : computed) cache.entries.emplace_back(r.p, r.a_p);
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out << serialize_cache(cache);
      if (!out) throw CacheError("cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
  }
  return result;
}

}  // namespace tatelab
