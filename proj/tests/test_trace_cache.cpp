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

#include <unistd.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "tatelab/trace_cache.hpp"

using namespace tatelab;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& tag)
      : path(fs::temp_directory_path() /
             ("tatelab_cache_" + tag + "_" + std::to_string(::getpid()))) {
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void spill(const fs::path& p, const std::string& text) {
  fs::create_directories(p.parent_path());
  std::ofstream(p) << text;
}

}  // namespace

TEST_CASE("fresh cache computes and stores every good prime") {
  TempDir dir("fresh");
  const CurveQ curve(1, 1);
  const CacheResult r = cache_read_write(curve, 50, dir.path, 2);
  CHECK(r.reused == 0);
  CHECK(r.computed == 12);
  REQUIRE(r.records.size() == 12);
  CHECK(r.records.front().p == 5);
  CHECK(r.records.back().p == 47);
  for (const TraceRecord& rec : r.records) CHECK(rec.p != 31);

  const auto expect = trace_sequence(curve, 50);
  for (std::size_t k = 0; k < expect.size(); ++k) {
    CHECK(r.records[k].p == expect[k].p);
    CHECK(r.records[k].a_p == expect[k].a_p);
  }
  CHECK(cache_path(dir.path, curve).filename() == "curve_1_1.csv");
  const std::string text = slurp(cache_path(dir.path, curve));
  CHECK(text.rfind("curve,1,1\n5,-3\n7,3\n", 0) == 0);
}

TEST_CASE("cache extends without recomputing") {
  TempDir dir("extend");
  const CurveQ curve(1, 1);
  cache_read_write(curve, 50, dir.path);
  const CacheResult grown = cache_read_write(curve, 100, dir.path);
  CHECK(grown.reused == 12);
  CHECK(grown.computed == 10);
  const auto expect = trace_sequence(curve, 100);
  REQUIRE(grown.records.size() == expect.size());
  for (std::size_t k = 0; k < expect.size(); ++k) {
    CHECK(grown.records[k].a_p == expect[k].a_p);
  }

  const CacheResult shrunk = cache_read_write(curve, 30, dir.path);
  CHECK(shrunk.reused == 8);
  CHECK(shrunk.computed == 0);
  CHECK(shrunk.records.back().p == 29);

  const CacheResult again = cache_read_write(curve, 100, dir.path);
  CHECK(again.computed == 0);
  CHECK(again.reused == expect.size());
}

TEST_CASE("tampered caches are rejected") {
  TempDir dir("tamper");
  const CurveQ curve(1, 1);
  cache_read_write(curve, 50, dir.path);
  const fs::path file = cache_path(dir.path, curve);
  const std::string good = slurp(file);

  std::string bad = good;
  bad.replace(bad.find("7,3"), 3, "7,100");
  spill(file, bad);
  CHECK_THROWS_AS(cache_read_write(curve, 50, dir.path), CacheError);

  spill(file, "curve,2,1\n5,-3\n");
  CHECK_THROWS_AS(cache_read_write(curve, 50, dir.path), CacheError);
}

TEST_CASE("parse_cache validation") {
  CHECK_NOTHROW(parse_cache("curve,1,1\n5,-3\n7,3\n", "t"));
  CHECK(parse_cache("curve,1,1\n", "t").entries.empty());
  CHECK_THROWS_AS(parse_cache("", "t"), CacheError);
  CHECK_THROWS_AS(parse_cache("curve,1\n", "t"), CacheError);
  CHECK_THROWS_AS(parse_cache("p,a_p\n5,-3\n", "t"), CacheError);
  CHECK_THROWS_AS(parse_cache("curve,1,1\n7,3\n5,-3\n", "t"), CacheError);
  CHECK_THROWS_AS(parse_cache("curve,1,1\n5,-3\n5,-3\n", "t"), CacheError);
  CHECK_THROWS_AS(parse_cache("curve,1,1\n5,-3\n11,0\n", "t"), CacheError);
  CHECK_THROWS_AS(parse_cache("curve,1,1\n5 -3\n", "t"), CacheError);
  CHECK_THROWS_AS(parse_cache("curve,1,1\n9,1\n", "t"), CacheError);
  CHECK_THROWS_AS(parse_cache("curve,1,1\n3,1\n", "t"), CacheError);
  CHECK_THROWS_AS(parse_cache("curve,0,0\n", "t"), CacheError);

  // 31 divides the discriminant of (1, 1) and may not appear.
  std::string through29 = "curve,1,1\n";
  for (const TraceRecord& r : trace_sequence(CurveQ(1, 1), 40)) {
    through29 += std::to_string(r.p) + "," + std::to_string(r.a_p) + "\n";
  }
  CHECK_NOTHROW(parse_cache(through29, "t"));
  std::string with31 = through29;
  with31.insert(with31.find("37,"), "31,0\n");
  CHECK_THROWS_AS(parse_cache(with31, "t"), CacheError);
}

TEST_CASE("serialize and parse round trip") {
  TraceCache cache{-2, 3, {}};
  for (const TraceRecord& r : trace_sequence(CurveQ(-2, 3), 200)) {
    cache.entries.emplace_back(r.p, r.a_p);
  }
  const TraceCache back = parse_cache(serialize_cache(cache), "t");
  CHECK(back.A == -2);
  CHECK(back.B == 3);
  CHECK(back.entries == cache.entries);
  CHECK(serialize_cache(back) == serialize_cache(cache));
}
