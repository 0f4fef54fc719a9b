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

#include "tatelab/expcli.hpp"

#include <charconv>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tatelab/curves.hpp"
#include "tatelab/format.hpp"
#include "tatelab/l_products.hpp"
#include "tatelab/nagao.hpp"
#include "tatelab/sato_tate.hpp"
#include "tatelab/tate_ff.hpp"
#include "tatelab/trace_cache.hpp"

namespace tatelab::cli {

namespace {

using json = nlohmann::json;
using RawOptions = std::map<std::string, std::string>;

// Help requests and CLI11 parse failures, with the text CLI11 produced.
struct ParseExit {
  int code;
  std::string out;
  std::string err;
};

struct OptionSpec {
  const char* key;
  const char* help;
};

struct CommandSpec {
  Command command;
  const char* name;
  const char* help;
  std::vector<OptionSpec> options;
};

const std::vector<OptionSpec> kCommonOptions = {
    {"out", "write the report to this file instead of stdout"},
    {"format", "csv (default) or json"},
    {"workers", "worker threads; 0 = hardware concurrency (default)"},
};

const std::vector<CommandSpec>& command_specs() {
  static const std::vector<CommandSpec> specs = {
      {Command::trace, "trace",
       "Traces a_p for y^2 = x^3 + Ax + B at good primes 3 < p <= X.\n"
       "CSV columns: p,a_p,theta_p",
       {{"A", "curve coefficient A (default 1)"},
        {"B", "curve coefficient B (default 1)"},
        {"X", "prime cutoff (default 1000)"},
        {"cache", "trace cache directory (default $TATE_LAB_CACHE)"}}},
      {Command::sato_tate, "sato-tate",
       "Sato-Tate diagnostics: KS distance, moments, character sums.\n"
       "CSV columns: kind,index,value,target,c_hat,mean",
       {{"A", "curve coefficient A (default 1)"},
        {"B", "curve coefficient B (default 1)"},
        {"X", "prime cutoff (default 100000)"},
        {"kmax", "largest moment index k, <= 8 (default 3)"},
        {"mmax", "largest character degree m (default 6)"},
        {"cache", "trace cache directory (default $TATE_LAB_CACHE)"}}},
      {Command::pole_ledger, "pole-ledger",
       "Euler ledger Phi_i of E^m and its pole order at s = 1 + i/2.\n"
       "CSV columns: kind,n,exponent,c_n,value",
       {{"m", "power of E (default 2)"},
        {"i", "cohomological degree, 0 <= i <= 2m (default 2)"},
        {"assume", "pole-order overrides n=c, comma separated (e.g. 2=0,4=1)"}}},
      {Command::euler_check, "euler-check",
       "Seeded sweep of the symmetric-power factorization identities.\n"
       "CSV columns: draw,m,theta,q,s,screened,factorization_dev,quotient_dev",
       {{"draws", "number of random draws (default 1000)"},
        {"seed", "random seed (default 0)"},
        {"mmax", "largest m drawn (default 6)"},
        {"qmax", "largest prime q drawn (default 1000)"}}},
      {Command::tate_ff, "tate-ff",
       "Tate multiplicities of E^m over F_q for 1 <= j <= m <= mmax.\n"
       "CSV columns: m,j,tate_multiplicity,generic_rank",
       {{"A", "curve coefficient A, used when --a is absent (default 1)"},
        {"B", "curve coefficient B, used when --a is absent (default 1)"},
        {"p", "prime > 3 (default 5)"},
        {"a", "trace over F_{p^degree}"},
        {"degree", "q = p^degree for --a (default 1)"},
        {"ext", "base-extend to q^ext first (default 1)"},
        {"mmax", "largest power m, <= 8 (default 4)"}}},
      {Command::zeta_ff, "zeta-ff",
       "Zeta numerator and point counts of E over F_{q^n}.\n"
       "CSV columns: n,q_n,t_n,points",
       {{"A", "curve coefficient A, used when --a is absent (default 1)"},
        {"B", "curve coefficient B, used when --a is absent (default 1)"},
        {"p", "prime > 3 (default 5)"},
        {"a", "trace over F_{p^degree}"},
        {"degree", "q = p^degree for --a (default 1)"},
        {"ext", "base-extend to q^ext first (default 1)"},
        {"nmax", "largest extension degree counted (default 6)"},
        {"s", "real points at which to evaluate zeta(E, s), comma separated"}}},
      {Command::nagao, "nagao",
       "Fibral averages A_p and Nagao's Tauberian sum for\n"
       "y^2 = x^3 + A(T)x + B(T). Polynomials are coefficient lists low to\n"
       "high, e.g. --A 0,1 --B 1,2,0,-1 (use --B=-1,... for a leading minus).\n"
       "CSV columns: p,A_p_num,A_p_den,partial_tauberian",
       {{"A", "coefficients of A(T)"},
        {"B", "coefficients of B(T)"},
        {"Px", "section x(T); with --Qy, sets B = Qy^2 - Px^3 - A Px"},
        {"Qy", "section y(T)"},
        {"X", "prime cutoff (default 1000)"},
        {"budget", "largest allowed X (default 5000)"},
        {"exclude", "primes to skip, comma separated"},
        {"deltas", "residue grid s = 1 + delta (default 0.5,0.25,0.1)"}}},
  };
  return specs;
}

const CommandSpec& spec_for(const std::string& name) {
  for (const CommandSpec& s : command_specs()) {
    if (name == s.name) return s;
  }
  throw UsageError("unknown command '" + name + "'");
}

std::string trim(std::string s) {
  const auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!s.empty() && ws(s.back())) s.pop_back();
  std::size_t k = 0;
  while (k < s.size() && ws(s[k])) ++k;
  return s.substr(k);
}

RawOptions read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read config file " + path);
  RawOptions values;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw UsageError(path + ":" + std::to_string(lineno) +
                       ": expected key=value");
    }
    values[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return values;
}

template <typename T>
T parse_integer(const std::string& key, const std::string& text) {
  T value{};
  std::string_view s = text;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size()) {
    throw UsageError("--" + key + ": expected an integer, got '" + text + "'");
  }
  return value;
}

double parse_real(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size() && std::isfinite(v)) return v;
  } catch (const std::exception&) {
  }
  throw UsageError("--" + key + ": expected a real number, got '" + text + "'");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  if (trim(text).empty()) return out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(trim(item));
  return out;
}

std::vector<i64> parse_poly_option(const std::string& key,
                                   const std::string& text) {
  try {
    return parse_poly(text);
  } catch (const std::invalid_argument&) {
    throw UsageError("--" + key +
                     ": expected comma-separated integers, got '" + text + "'");
  }
}

std::string join_ints(const auto& values) {
  std::string out;
  for (const auto& v : values) {
    if (!out.empty()) out += ',';
    out += std::to_string(v);
  }
  return out;
}

std::string join_reals(const std::vector<double>& values) {
  std::string out;
  for (double v : values) {
    if (!out.empty()) out += ',';
    out += fmt_real(v);
  }
  return out;
}

// Resolves raw strings into a validated config; nothing heavy runs here.
ExperimentConfig resolve(const CommandSpec& spec, const RawOptions& raw) {
  ExperimentConfig c;
  c.command = spec.command;
  const auto has = [&](const char* k) { return raw.count(k) != 0; };
  const auto get = [&](const char* k) { return raw.at(k); };

  if (has("format")) c.format = get("format");
  if (c.format != "csv" && c.format != "json") {
    throw UsageError("--format must be csv or json");
  }
  if (has("out")) c.output = get("out");
  if (has("workers")) c.workers = parse_integer<unsigned>("workers", get("workers"));
  if (has("cache")) {
    c.cache_dir = get("cache");
  } else if (const char* env = std::getenv(kCacheEnv); env && *env) {
    c.cache_dir = env;
  }

  const auto curve_from_raw = [&] {
    if (has("A")) c.A = parse_integer<i64>("A", get("A"));
    if (has("B")) c.B = parse_integer<i64>("B", get("B"));
    try {
      (void)CurveQ(c.A, c.B);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  };

  switch (spec.command) {
    case Command::trace:
    case Command::sato_tate: {
      curve_from_raw();
      c.X = spec.command == Command::trace ? 1000 : 100000;
      if (has("X")) c.X = parse_integer<u64>("X", get("X"));
      if (c.X < 5) throw UsageError("--X must be >= 5");
      if (c.X >= (u64{1} << 31)) throw UsageError("--X must be < 2^31");
      if (spec.command == Command::sato_tate) {
        if (has("kmax")) c.k_max = parse_integer<unsigned>("kmax", get("kmax"));
        if (has("mmax")) c.m_max = parse_integer<unsigned>("mmax", get("mmax"));
        if (c.k_max > 8) throw UsageError("--kmax must be <= 8");
        if (c.m_max > 64) throw UsageError("--mmax must be <= 64");
      }
      break;
    }
    case Command::pole_ledger: {
      if (has("m")) c.m = parse_integer<unsigned>("m", get("m"));
      if (has("i")) c.i = parse_integer<unsigned>("i", get("i"));
      if (c.m < 1 || c.m > 30) throw UsageError("--m must be in 1..30");
      if (c.i > 2 * c.m) throw UsageError("--i must be in 0..2m");
      if (has("assume")) {
        for (const std::string& item : split_list(get("assume"))) {
          const std::size_t eq = item.find('=');
          if (eq == std::string::npos) {
            throw UsageError("--assume entries look like n=c, got '" + item + "'");
          }
          c.assume.emplace_back(
              parse_integer<unsigned>("assume", trim(item.substr(0, eq))),
              parse_integer<int>("assume", trim(item.substr(eq + 1))));
        }
      }
      break;
    }
    case Command::euler_check: {
      if (has("draws")) c.draws = parse_integer<u64>("draws", get("draws"));
      if (has("seed")) c.seed = parse_integer<u64>("seed", get("seed"));
      if (has("mmax")) c.m_max = parse_integer<unsigned>("mmax", get("mmax"));
      if (has("qmax")) c.q_max = parse_integer<u64>("qmax", get("qmax"));
      if (c.draws < 1 || c.draws > 10'000'000) {
        throw UsageError("--draws must be in 1..10^7");
      }
      if (c.m_max > 24) throw UsageError("--mmax must be <= 24");
      if (c.q_max < 2 || c.q_max > 100'000'000) {
        throw UsageError("--qmax must be in 2..10^8");
      }
      break;
    }
    case Command::tate_ff:
    case Command::zeta_ff: {
      if (has("p")) c.p = parse_integer<u64>("p", get("p"));
      if (c.p <= 3 || c.p >= (u64{1} << 31) || !is_prime(c.p)) {
        throw UsageError("--p must be a prime in 5..2^31");
      }
      if (has("degree")) c.degree = parse_integer<unsigned>("degree", get("degree"));
      if (has("ext")) c.ext = parse_integer<unsigned>("ext", get("ext"));
      if (c.degree < 1 || c.degree > 64) throw UsageError("--degree must be in 1..64");
      if (c.ext < 1 || c.ext > 64) throw UsageError("--ext must be in 1..64");
      if (has("a")) {
        c.a = parse_integer<i64>("a", get("a"));
        try {
          (void)FrobeniusPair::make(*c.a, c.p, c.degree);
        } catch (const std::domain_error& e) {
          throw UsageError(std::string("--a: ") + e.what());
        }
      } else {
        curve_from_raw();
        if (c.degree != 1) throw UsageError("--degree needs an explicit --a");
        if (CurveQ(c.A, c.B).is_bad_prime(c.p)) {
          throw UsageError("curve has bad reduction at --p " +
                           std::to_string(c.p));
        }
      }
      if (spec.command == Command::tate_ff) {
        c.m_max = 4;
        if (has("mmax")) c.m_max = parse_integer<unsigned>("mmax", get("mmax"));
        if (c.m_max < 1 || c.m_max > kMaxTatePower) {
          throw UsageError("--mmax must be in 1..8");
        }
      } else {
        if (has("nmax")) c.n_max = parse_integer<unsigned>("nmax", get("nmax"));
        if (c.n_max < 1 || c.n_max > 256) throw UsageError("--nmax must be in 1..256");
        if (has("s")) {
          for (const std::string& item : split_list(get("s"))) {
            const double s = parse_real("s", item);
            if (s == 0.0 || s == 1.0) {
              throw UsageError("--s: zeta(E, s) has poles at s = 0 and s = 1");
            }
            c.s_values.push_back(s);
          }
        }
      }
      break;
    }
    case Command::nagao: {
      if (!has("A")) throw UsageError("nagao needs --A");
      c.A_poly = parse_poly_option("A", get("A"));
      c.from_section = has("Px") || has("Qy");
      if (c.from_section) {
        if (!has("Px") || !has("Qy")) throw UsageError("--Px and --Qy go together");
        if (has("B")) throw UsageError("--B conflicts with --Px/--Qy");
        c.section_x = parse_poly_option("Px", get("Px"));
        c.section_y = parse_poly_option("Qy", get("Qy"));
      } else {
        if (!has("B")) throw UsageError("nagao needs --B (or --Px and --Qy)");
        c.B_poly = parse_poly_option("B", get("B"));
      }
      try {
        const SurfaceQT surface =
            c.from_section
                ? make_section_surface(c.A_poly, c.section_x, c.section_y)
                : SurfaceQT(c.A_poly, c.B_poly);
        c.A_poly = surface.A();
        c.B_poly = surface.B();
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      c.X = 1000;
      if (has("X")) c.X = parse_integer<u64>("X", get("X"));
      if (has("budget")) c.budget = parse_integer<u64>("budget", get("budget"));
      if (c.budget >= (u64{1} << 20)) throw UsageError("--budget must be < 2^20");
      if (c.X < 5) throw UsageError("--X must be >= 5");
      if (c.X > c.budget) {
        throw UsageError("--X " + std::to_string(c.X) + " exceeds --budget " +
                         std::to_string(c.budget));
      }
      if (has("exclude")) {
        for (const std::string& item : split_list(get("exclude"))) {
          c.exclude.push_back(parse_integer<u64>("exclude", item));
        }
        std::sort(c.exclude.begin(), c.exclude.end());
        c.exclude.erase(std::unique(c.exclude.begin(), c.exclude.end()),
                        c.exclude.end());
      }
      if (has("deltas")) {
        c.deltas.clear();
        for (const std::string& item : split_list(get("deltas"))) {
          const double d = parse_real("deltas", item);
          if (!(d > 0.0)) throw UsageError("--deltas must all be > 0");
          c.deltas.push_back(d);
        }
      }
      break;
    }
  }
  return c;
}

}  // namespace

const char* command_name(Command c) {
  for (const CommandSpec& s : command_specs()) {
    if (s.command == c) return s.name;
  }
  return "?";
}

std::vector<std::pair<std::string, std::string>> ExperimentConfig::describe()
    const {
  std::vector<std::pair<std::string, std::string>> kv;
  kv.emplace_back("command", command_name(command));
  const auto add = [&kv](std::string k, std::string v) {
    kv.emplace_back(std::move(k), std::move(v));
  };
  switch (command) {
    case Command::trace:
    case Command::sato_tate:
      add("A", std::to_string(A));
      add("B", std::to_string(B));
      add("X", std::to_string(X));
      if (command == Command::sato_tate) {
        add("kmax", std::to_string(k_max));
        add("mmax", std::to_string(m_max));
      }
      break;
    case Command::pole_ledger: {
      add("m", std::to_string(m));
      add("i", std::to_string(i));
      std::string a;
      for (const auto& [n, ord] : assume) {
        if (!a.empty()) a += ',';
        a += std::to_string(n) + "=" + std::to_string(ord);
      }
      add("assume", a);
      break;
    }
    case Command::euler_check:
      add("draws", std::to_string(draws));
      add("seed", std::to_string(seed));
      add("mmax", std::to_string(m_max));
      add("qmax", std::to_string(q_max));
      break;
    case Command::tate_ff:
    case Command::zeta_ff:
      if (a) {
        add("a", std::to_string(*a));
        add("degree", std::to_string(degree));
      } else {
        add("A", std::to_string(A));
        add("B", std::to_string(B));
      }
      add("p", std::to_string(p));
      add("ext", std::to_string(ext));
      if (command == Command::tate_ff) {
        add("mmax", std::to_string(m_max));
      } else {
        add("nmax", std::to_string(n_max));
        add("s", join_reals(s_values));
      }
      break;
    case Command::nagao:
      add("A", join_ints(A_poly));
      add("B", join_ints(B_poly));
      if (from_section) {
        add("Px", join_ints(section_x));
        add("Qy", join_ints(section_y));
      }
      add("X", std::to_string(X));
      add("exclude", join_ints(exclude));
      add("deltas", join_reals(deltas));
      break;
  }
  return kv;
}

ExperimentConfig parse_args(const std::vector<std::string>& args_in) {
  std::vector<std::string> args = args_in;

  // Pull out --config so its values can fill in absent flags.
  RawOptions from_file;
  for (std::size_t k = 0; k < args.size(); ++k) {
    std::string path;
    if (args[k] == "--config") {
      if (k + 1 >= args.size()) throw UsageError("--config needs a file");
      path = args[k + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(k),
                 args.begin() + static_cast<std::ptrdiff_t>(k + 2));
    } else if (args[k].rfind("--config=", 0) == 0) {
      path = args[k].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(k));
    } else {
      continue;
    }
    for (auto& [key, value] : read_config_file(path)) from_file[key] = value;
    --k;
  }

  const auto is_command = [](const std::string& a) {
    for (const CommandSpec& s : command_specs()) {
      if (a == s.name) return true;
    }
    return false;
  };
  if (std::none_of(args.begin(), args.end(), is_command)) {
    if (const auto it = from_file.find("command"); it != from_file.end()) {
      args.insert(args.begin(), it->second);
    }
  }
  from_file.erase("command");

  CLI::App app{"tate-lab: Frobenius traces, Sato-Tate statistics, Tate "
               "multiplicities and Nagao sums for elliptic curves",
               "tate-lab"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "help for every subcommand");

  std::map<std::string, std::map<std::string, std::string>> storage;
  std::map<std::string, std::map<std::string, CLI::Option*>> handles;
  for (const CommandSpec& spec : command_specs()) {
    CLI::App* sub = app.add_subcommand(spec.name, spec.help);
    sub->add_option("--config", "key=value file supplying absent options");
    std::vector<OptionSpec> all = spec.options;
    all.insert(all.end(), kCommonOptions.begin(), kCommonOptions.end());
    for (const OptionSpec& opt : all) {
      std::string& slot = storage[spec.name][opt.key];
      handles[spec.name][opt.key] =
          sub->add_option(std::string("--") + opt.key, slot, opt.help);
    }
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = app.exit(e, out, err);
    throw ParseExit{code, out.str(), err.str()};
  }

  const CLI::App* chosen = app.get_subcommands().front();
  const CommandSpec& spec = spec_for(chosen->get_name());
  RawOptions raw;
  for (const auto& [key, option] : handles[spec.name]) {
    if (option->count() > 0) raw[key] = storage[spec.name][key];
  }
  for (const auto& [key, value] : from_file) {
    if (!handles[spec.name].contains(key)) {
      throw UsageError("config key '" + key + "' is not an option of " +
                       spec.name);
    }
    raw.emplace(key, value);  // flags win
  }
  return resolve(spec, raw);
}

namespace {

std::string csv_preamble(const ExperimentConfig& c) {
  std::string out = "# tate-lab " + std::string(command_name(c.command)) + "\n";
  for (const auto& [k, v] : c.describe()) out += "# " + k + "=" + v + "\n";
  return out;
}

json json_config(const ExperimentConfig& c) {
  json cfg = json::object();
  for (const auto& [k, v] : c.describe()) cfg[k] = v;
  return cfg;
}

std::string json_text(json j) { return j.dump(2) + "\n"; }

std::vector<TraceRecord> load_records(const ExperimentConfig& c,
                                      std::ostream& err) {
  const CurveQ curve(c.A, c.B);
  if (c.cache_dir.empty()) return trace_sequence(curve, c.X, c.workers);
  CacheResult r = cache_read_write(curve, c.X, c.cache_dir, c.workers);
  err << "tate-lab: cache " << cache_path(c.cache_dir, curve).string()
      << ": reused " << r.reused << ", computed " << r.computed << "\n";
  return std::move(r.records);
}

FrobeniusPair frobenius_from(const ExperimentConfig& c) {
  FrobeniusPair fp =
      c.a ? FrobeniusPair::make(*c.a, c.p, c.degree)
          : FrobeniusPair::from_trace(
                trace_fp(reduce_signed(c.A, c.p), reduce_signed(c.B, c.p),
                         build_qr_table(c.p)),
                c.p);
  return c.ext > 1 ? extension_trace(fp, c.ext) : fp;
}

std::string big(const BigInt& v) { return v.str(); }

int cmd_trace(const ExperimentConfig& c, std::string& report,
              std::ostream& err) {
  const std::vector<TraceRecord> records = load_records(c, err);
  if (c.format == "json") {
    json rows = json::array();
    for (const TraceRecord& r : records) {
      rows.push_back(
          {{"p", r.p}, {"a_p", r.a_p}, {"theta_p", round12(r.theta_p)}});
    }
    report = json_text({{"config", json_config(c)}, {"records", rows}});
    return kExitOk;
  }
  std::ostringstream out;
  out << csv_preamble(c) << "p,a_p,theta_p\n";
  for (const TraceRecord& r : records) {
    out << r.p << ',' << r.a_p << ',' << fmt_real(r.theta_p) << '\n';
  }
  report = out.str();
  return kExitOk;
}

int cmd_sato_tate(const ExperimentConfig& c, std::string& report,
                  std::ostream& err) {
  if (c.A == 0 || c.B == 0) {
    err << "tate-lab: warning: curve has complex multiplication (j = "
        << (c.A == 0 ? "0" : "1728") << "); Sato-Tate does not apply\n";
  }
  const std::vector<TraceRecord> records = load_records(c, err);
  if (records.empty()) throw std::domain_error("no good primes below X");
  const STReport st = sato_tate_report(records, c.X, c.k_max, c.m_max);
  if (c.format == "json") {
    report = json_text({{"config", json_config(c)}, {"report", to_json(st)}});
  } else {
    report = csv_preamble(c) + to_csv(st);
  }
  return kExitOk;
}

int cmd_pole_ledger(const ExperimentConfig& c, std::string& report) {
  PoleAssumptions assumptions = PoleAssumptions::tate_default();
  for (const auto& [n, ord] : c.assume) assumptions.set(n, ord);
  const EulerLedger ledger = build_ledger(c.m, c.i);
  const std::int64_t order = ledger_pole_order(ledger, assumptions);
  const bool has_rank = c.i % 2 == 0 && c.i / 2 <= c.m;
  const std::int64_t rank = has_rank ? generic_rank(c.m, c.i / 2) : 0;

  if (c.format == "json") {
    json terms = json::array();
    for (const LedgerTerm& t : ledger.terms) {
      terms.push_back({{"n", t.n},
                       {"exponent", t.exponent},
                       {"c_n", assumptions.order(t.n)}});
    }
    json j = {{"config", json_config(c)},
              {"ledger", render_ledger(ledger)},
              {"terms", terms},
              {"pole_order", order}};
    if (has_rank) j["generic_rank"] = rank;
    report = json_text(j);
    return kExitOk;
  }
  std::ostringstream out;
  out << csv_preamble(c) << "# " << render_ledger(ledger) << "\n"
      << "kind,n,exponent,c_n,value\n";
  for (const LedgerTerm& t : ledger.terms) {
    out << "term," << t.n << ',' << t.exponent << ','
        << assumptions.order(t.n) << ",\n";
  }
  out << "pole_order,,,," << order << '\n';
  if (has_rank) out << "generic_rank,,,," << rank << '\n';
  report = out.str();
  return kExitOk;
}

int cmd_euler_check(const ExperimentConfig& c, std::string& report,
                    std::ostream& err) {
  constexpr double kTolerance = 1e-10;
  const std::vector<FactorizationDraw> draws =
      sample_factorization_draws(c.seed, c.draws, c.m_max, c.q_max);
  double max_fact = 0.0;
  double max_quot = 0.0;
  std::size_t screened = 0;
  std::ostringstream out;
  json rows = json::array();
  if (c.format == "csv") {
    out << csv_preamble(c)
        << "draw,m,theta,q,s,screened,factorization_dev,quotient_dev\n";
  }
  for (std::size_t k = 0; k < draws.size(); ++k) {
    const FactorizationDraw& d = draws[k];
    const FactorizationCheck check = verify_factorization(d.m, d.theta, d.q, d.s);
    screened += check.screened ? 1 : 0;
    max_fact = std::max(max_fact, check.factorization_dev);
    max_quot = std::max(max_quot, check.quotient_dev);
    if (c.format == "csv") {
      out << k << ',' << d.m << ',' << fmt_real(d.theta) << ','
          << fmt_real(d.q) << ',' << fmt_real(d.s) << ',' << check.screened
          << ',' << fmt_real(check.factorization_dev) << ','
          << fmt_real(check.quotient_dev) << '\n';
    } else {
      rows.push_back({{"m", d.m},
                      {"theta", round12(d.theta)},
                      {"q", round12(d.q)},
                      {"s", round12(d.s)},
                      {"screened", check.screened},
                      {"factorization_dev", round12(check.factorization_dev)},
                      {"quotient_dev", round12(check.quotient_dev)}});
    }
  }
  if (c.format == "csv") {
    out << "# max_factorization_dev=" << fmt_real(max_fact) << '\n'
        << "# max_quotient_dev=" << fmt_real(max_quot) << '\n'
        << "# screened=" << screened << '\n';
    report = out.str();
  } else {
    report = json_text({{"config", json_config(c)},
                        {"draws", rows},
                        {"max_factorization_dev", round12(max_fact)},
                        {"max_quotient_dev", round12(max_quot)},
                        {"screened", screened}});
  }
  if (max_fact >= kTolerance || max_quot >= kTolerance) {
    err << "tate-lab: error[data]: identity deviation above 1e-10\n";
    return kExitData;
  }
  return kExitOk;
}

int cmd_tate_ff(const ExperimentConfig& c, std::string& report) {
  const FrobeniusPair fp = frobenius_from(c);
  const AngleClass angle = classify(fp);
  std::ostringstream out;
  json rows = json::array();
  if (c.format == "csv") {
    out << csv_preamble(c) << "# frobenius_a=" << big(fp.a)
        << "\n# frobenius_q=" << big(fp.q)
        << "\n# angle=" << angle.to_string() << "\n"
        << "m,j,tate_multiplicity,generic_rank\n";
  }
  for (unsigned m = 1; m <= c.m_max; ++m) {
    for (unsigned j = 1; j <= m; ++j) {
      const std::uint64_t mult = tate_multiplicity(fp, m, j);
      const std::int64_t rank = generic_rank(m, j);
      if (c.format == "csv") {
        out << m << ',' << j << ',' << mult << ',' << rank << '\n';
      } else {
        rows.push_back({{"m", m},
                        {"j", j},
                        {"tate_multiplicity", mult},
                        {"generic_rank", rank}});
      }
    }
  }
  report = c.format == "csv"
               ? out.str()
               : json_text({{"config", json_config(c)},
                            {"a", big(fp.a)},
                            {"q", big(fp.q)},
                            {"angle", angle.to_string()},
                            {"rows", rows}});
  return kExitOk;
}

int cmd_zeta_ff(const ExperimentConfig& c, std::string& report) {
  const FrobeniusPair fp = frobenius_from(c);
  const auto coeffs = zeta_numerator(fp);

  // Roots of q t^2 - a t + 1 have modulus q^{-1/2}.
  const double a = static_cast<double>(fp.a);
  const double q = static_cast<double>(fp.q);
  const std::complex<double> disc = std::sqrt(std::complex<double>(a * a - 4 * q));
  double root_err = 0.0;
  for (const auto& root : {(a + disc) / (2 * q), (a - disc) / (2 * q)}) {
    root_err = std::max(root_err,
                        std::abs(std::abs(root) * std::sqrt(q) - 1.0));
  }

  std::ostringstream out;
  json rows = json::array();
  json zetas = json::array();
  if (c.format == "csv") {
    out << csv_preamble(c) << "# P_1=" << big(coeffs[0]) << ','
        << big(coeffs[1]) << ',' << big(coeffs[2]) << '\n'
        << "# root_modulus_rel_error=" << fmt_real(root_err) << '\n';
    for (double s : c.s_values) {
      out << "# zeta(" << fmt_real(s) << ")=" << fmt_real(zeta_value(fp, s))
          << '\n';
    }
    out << "n,q_n,t_n,points\n";
  } else {
    for (double s : c.s_values) {
      zetas.push_back({{"s", round12(s)}, {"value", round12(zeta_value(fp, s))}});
    }
  }
  for (unsigned n = 1; n <= c.n_max; ++n) {
    const FrobeniusPair e = extension_trace(fp, n);
    if (c.format == "csv") {
      out << n << ',' << big(e.q) << ',' << big(e.a) << ','
          << big(e.point_count()) << '\n';
    } else {
      rows.push_back({{"n", n},
                      {"q_n", big(e.q)},
                      {"t_n", big(e.a)},
                      {"points", big(e.point_count())}});
    }
  }
  report = c.format == "csv"
               ? out.str()
               : json_text({{"config", json_config(c)},
                            {"P_1", {big(coeffs[0]), big(coeffs[1]), big(coeffs[2])}},
                            {"root_modulus_rel_error", round12(root_err)},
                            {"zeta", zetas},
                            {"counts", rows}});
  return kExitOk;
}

int cmd_nagao(const ExperimentConfig& c, std::string& report,
              std::ostream& err) {
  const SurfaceQT surface(c.A_poly, c.B_poly);
  if (surface.has_constant_j()) {
    err << "tate-lab: warning: j(T) is constant; the fibral average may "
           "carry a nonzero constant-curve term\n";
  }
  NagaoReport r = tauberian_sum(surface, c.X, {c.workers, c.exclude});
  std::vector<FibralAverage> averages;
  averages.reserve(r.rows.size());
  for (const NagaoRow& row : r.rows) averages.push_back(row.average);
  r.residue_grid = residue_from_averages(averages, c.deltas);

  if (c.format == "json") {
    json rows = json::array();
    for (const NagaoRow& row : r.rows) {
      rows.push_back({{"p", row.average.p},
                      {"A_p_num", row.average.numerator},
                      {"A_p_den", row.average.denominator},
                      {"partial_tauberian", round12(row.partial_tauberian)}});
    }
    json grid = json::array();
    for (const ResiduePoint& g : r.residue_grid) {
      grid.push_back({{"delta", round12(g.delta)},
                      {"estimate", round12(g.estimate)}});
    }
    report = json_text({{"config", json_config(c)},
                        {"rows", rows},
                        {"tauberian", round12(r.tauberian)},
                        {"residue_grid", grid}});
    return kExitOk;
  }
  std::ostringstream out;
  out << csv_preamble(c) << "p,A_p_num,A_p_den,partial_tauberian\n";
  for (const NagaoRow& row : r.rows) {
    out << row.average.p << ',' << row.average.numerator << ','
        << row.average.denominator << ',' << fmt_real(row.partial_tauberian)
        << '\n';
  }
  out << "# tauberian=" << fmt_real(r.tauberian) << '\n';
  for (const ResiduePoint& g : r.residue_grid) {
    out << "# residue delta=" << fmt_real(g.delta)
        << " estimate=" << fmt_real(g.estimate) << '\n';
  }
  report = out.str();
  return kExitOk;
}

}  // namespace

int execute(const ExperimentConfig& config, std::ostream& out,
            std::ostream& err) {
  std::string report;
  int status = kExitOk;
  switch (config.command) {
    case Command::trace:
      status = cmd_trace(config, report, err);
      break;
    case Command::sato_tate:
      status = cmd_sato_tate(config, report, err);
      break;
    case Command::pole_ledger:
      status = cmd_pole_ledger(config, report);
      break;
    case Command::euler_check:
      status = cmd_euler_check(config, report, err);
      break;
    case Command::tate_ff:
      status = cmd_tate_ff(config, report);
      break;
    case Command::zeta_ff:
      status = cmd_zeta_ff(config, report);
      break;
    case Command::nagao:
      status = cmd_nagao(config, report, err);
      break;
  }
  if (config.output.empty()) {
    out << report;
  } else {
    const std::filesystem::path path(config.output);
    if (path.has_parent_path()) {
      std::filesystem::create_directories(path.parent_path());
    }
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    file << report;
    if (!file) throw std::runtime_error("cannot write " + config.output);
  }
  return status;
}

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  ExperimentConfig config;
  try {
    config = parse_args(args);
  } catch (const ParseExit& e) {
    out << e.out;
    if (e.code == 0) return kExitOk;
    err << "tate-lab: error[usage]: " << trim(e.err) << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "tate-lab: error[usage]: " << e.what() << "\n";
    return kExitUsage;
  }
  try {
    return execute(config, out, err);
  } catch (const std::exception& e) {
    err << "tate-lab: error[data]: " << e.what() << "\n";
    return kExitData;
  }
}

}  // namespace tatelab::cli
