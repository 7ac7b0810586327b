#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "tdw/checks.hpp"
#include "tdw/cohomology.hpp"
#include "tdw/errors.hpp"
#include "tdw/parser.hpp"
#include "tdw/polynomial.hpp"
#include "tdw/report.hpp"

namespace tdw {

enum class OutputFormat { text, json };

/// Exit codes of the command-line tool.
namespace exit_code {
constexpr int pass = 0;
constexpr int mismatch = 1;
constexpr int input_error = 2;
constexpr int unstable = 3;
}  // namespace exit_code

struct RunConfig {
  std::string command;
  std::string f;
  std::vector<std::string> vars;
  std::vector<std::string> divisor;

  std::optional<long> degree_bound;
  std::optional<int> pole_bound;
  std::optional<int> max_doublings;
  std::optional<std::vector<int>> weights;

  std::string order = "degrevlex";
  std::string mode;  // twisted: polynomial | log | meromorphic
  std::string u = "1";

  std::string corpus_path;
  unsigned jobs = 0;  // 0: one per hardware thread
  int substitutions = 0;
  std::uint64_t seed = 1;

  OutputFormat format = OutputFormat::text;
  bool timing = false;
};

struct RunResult {
  int exit_code = exit_code::pass;
  Json report;
  /// report rendered in the requested format
  std::string output;
};

inline const std::vector<std::string>& known_commands() {
  static const std::vector<std::string> names = {
      "milnor",    "koszul",    "twisted",         "check-kb",
      "check-log", "check-sum", "check-quasi-iso", "corpus"};
  return names;
}

/// Parses "degrevlex", "lex" or "weighted:w1,w2,...".
inline MonomialOrder parse_order(const std::string& text) {
  if (text == "degrevlex") return MonomialOrder::degrevlex();
  if (text == "lex") return MonomialOrder::lex();
  const std::string prefix = "weighted:";
  if (text.rfind(prefix, 0) == 0) {
    std::vector<int> w;
    std::stringstream ss(text.substr(prefix.size()));
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        const int v = std::stoi(item, &used);
        if (used != item.size() || v <= 0) throw std::invalid_argument(item);
        w.push_back(v);
      } catch (const std::exception&) {
        throw InputError("invalid weight '" + item + "' in order");
      }
    }
    return MonomialOrder::weighted_degrevlex(std::move(w));
  }
  throw InputError("unknown monomial order '" + text + "'");
}

/// Doublings: explicit flag, then TDW_MAX_DOUBLINGS, then the default.
inline Truncation effective_truncation(const RunConfig& c,
                                       const char* env = std::getenv("TDW_MAX_DOUBLINGS")) {
  Truncation t;
  if (c.degree_bound) {
    if (*c.degree_bound <= 0) throw InputError("degree bound must be positive");
    t.degree_bound = *c.degree_bound;
  }
  if (c.pole_bound) {
    if (*c.pole_bound <= 0) throw InputError("pole bound must be positive");
    t.pole_bound = *c.pole_bound;
  }
  if (c.max_doublings) {
    t.max_doublings = *c.max_doublings;
  } else if (env != nullptr && *env != '\0') {
    try {
      std::size_t used = 0;
      t.max_doublings = std::stoi(env, &used);
      if (env[used] != '\0') throw std::invalid_argument(env);
    } catch (const std::exception&) {
      throw InputError(std::string("TDW_MAX_DOUBLINGS is not an integer: '") + env + "'");
    }
  }
  if (t.max_doublings < 0) throw InputError("max doublings must be nonnegative");
  if (t.max_doublings > 16) throw InputError("max doublings above 16 is not supported");
  if (c.weights) {
    if (std::any_of(c.weights->begin(), c.weights->end(), [](int w) { return w <= 0; }))
      throw InputError("weights must be positive");
    t.weights = c.weights;
  }
  return t;
}

inline int exit_code_for(VerdictStatus s) {
  switch (s) {
    case VerdictStatus::pass: return exit_code::pass;
    case VerdictStatus::fail: return exit_code::mismatch;
    case VerdictStatus::unstable: return exit_code::unstable;
    case VerdictStatus::degenerate: return exit_code::input_error;
  }
  return exit_code::input_error;
}

namespace detail {

struct CommandOutcome {
  int code = exit_code::pass;
  Json verdict;
  Evidence evidence;
  Json members;  // corpus only
};

inline CommandOutcome verdict_outcome(const TheoremVerdict& v, const Ring& ring) {
  CommandOutcome out;
  out.code = exit_code_for(v.status);
  out.verdict = verdict_json(v);
  out.evidence.add_verdict(v, ring);
  return out;
}

inline CommandOutcome dims_outcome(const std::string& id, const DimensionReport& r,
                                   const Ring& ring) {
  CommandOutcome out;
  out.code = r.stable ? exit_code::pass : exit_code::unstable;
  out.verdict = result_verdict_json(id, dims_json(r), r.certified,
                                    r.stable ? "pass" : "unstable");
  out.evidence.add("result", r, ring);
  return out;
}

inline CoefficientMode parse_mode(const std::string& mode, const Ring& ring) {
  if (mode.empty())
    return ring.has_divisor() ? CoefficientMode::log : CoefficientMode::polynomial;
  if (mode == "polynomial") return CoefficientMode::polynomial;
  if (mode == "log") return CoefficientMode::log;
  if (mode == "meromorphic") return CoefficientMode::meromorphic;
  throw InputError("unknown coefficient mode '" + mode + "'");
}

inline CommandOutcome run_single(const std::string& command, const LaurentPolynomial& f,
                                 const RunConfig& c, const Truncation& t) {
  const Ring& ring = *f.ring();
  if (command == "milnor") {
    const auto m = milnor_number(f, parse_order(c.order));
    CommandOutcome out;
    out.verdict = result_verdict_json("milnor", m.value, true, "pass");
    out.verdict["scope"] = to_string(m.scope);
    DimensionReport r;
    r.staircase = m.staircase;
    out.evidence.add("result", r, *without_divisor(f).ring());
    return out;
  }
  if (command == "koszul") {
    const auto r = ring.has_divisor() ? log_koszul_cohomology_dims(f, t)
                                      : koszul_cohomology_dims(f, t);
    return dims_outcome("koszul", r, ring);
  }
  if (command == "twisted") {
    const FormContext ctx(f.ring(), parse_mode(c.mode, ring));
    const Rational u = parse_rational(c.u);
    const auto r = truncated_complex_dims({ctx, f, ComplexOperator::twisted, u, t});
    return dims_outcome("twisted", r, ring);
  }
  if (command == "check-kb") return verdict_outcome(check_kontsevich_barannikov(f, t), ring);
  if (command == "check-log") return verdict_outcome(check_log_corollary(f, t), ring);
  if (command == "check-sum")
    return verdict_outcome(check_sum_of_vanishing_cycles(f, t), ring);
  if (command == "check-quasi-iso")
    return verdict_outcome(check_log_quasi_iso(f, t), ring);
  throw InputError("unknown command '" + command + "'");
}

inline Json error_report(const ReportInput& in, const std::string& message) {
  Json r = make_report(in, nullptr, Evidence().to_json(), std::nullopt);
  r["error"] = message;
  return r;
}

inline double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                   start)
      .count();
}

/// f composed with a random integer matrix of determinant 1 with small
/// entries.
inline LaurentPolynomial random_unimodular_substitution(const LaurentPolynomial& f,
                                                       std::mt19937_64& rng) {
  const auto plain = without_divisor(f);
  std::uniform_int_distribution<int> coef(-3, 3);
  // Lower then upper unipotent integer matrices: determinant 1, and any
  // variable may end up mixed with any other.
  const std::size_t n = plain.nvars();
  auto unipotent = [&](bool upper) {
    std::vector<LaurentPolynomial> images;
    for (std::size_t i = 0; i < n; ++i) {
      auto img = LaurentPolynomial::variable(plain.ring(), i);
      for (std::size_t j = 0; j < n; ++j)
        if (upper ? j > i : j < i)
          img += Rational(coef(rng)) * LaurentPolynomial::variable(plain.ring(), j);
      images.push_back(std::move(img));
    }
    return images;
  };
  const auto lower = unipotent(false);
  const auto upper = unipotent(true);
  return substitute(substitute(plain, lower), upper);
}

/// One corpus line: {name, f, vars, divisor?, expected?:{milnor, provenance}}.
struct CorpusMember {
  std::string name;
  std::string f;
  std::vector<std::string> vars;
  std::vector<std::string> divisor;
  std::optional<std::size_t> expected_milnor;
};

inline std::vector<std::string> string_list(const Json& j, const char* key) {
  if (!j.contains(key) || j[key].is_null()) return {};
  if (!j[key].is_array()) throw InputError(std::string("'") + key + "' must be a list");
  std::vector<std::string> out;
  for (const auto& s : j[key]) out.push_back(s.get<std::string>());
  return out;
}

inline std::vector<CorpusMember> read_corpus(std::istream& in) {
  std::vector<CorpusMember> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const std::string where = "corpus line " + std::to_string(lineno) + ": ";
    try {
      const Json j = Json::parse(line);
      CorpusMember m;
      m.name = j.at("name").get<std::string>();
      m.f = j.at("f").get<std::string>();
      m.vars = string_list(j, "vars");
      m.divisor = string_list(j, "divisor");
      if (j.contains("expected") && !j["expected"].is_null()) {
        const auto& e = j["expected"];
        if (!e.contains("provenance") || !e["provenance"].is_string() ||
            e["provenance"].get<std::string>().empty())
          throw InputError("expected values need a provenance comment");
        if (e.contains("milnor")) m.expected_milnor = e["milnor"].get<std::size_t>();
      }
      out.push_back(std::move(m));
    } catch (const InputError& err) {
      throw InputError(where + err.what());
    } catch (const Json::exception& err) {
      throw InputError(where + err.what());
    }
  }
  return out;
}

struct MemberResult {
  Json json;
  bool failed = false;
  bool errored = false;
  bool unstable = false;
  bool degenerate = false;
};

inline MemberResult run_member(const CorpusMember& m, const RunConfig& c,
                               const Truncation& t) {
  MemberResult res;
  Json reports = Json::array();
  Json notes = Json::array();
  std::string status = "pass";
  try {
    const auto f = parse_polynomial(m.f, VariableDeclaration{m.vars, m.divisor});
    std::vector<std::string> commands;
    if (f.ring()->has_divisor()) {
      commands = {"check-log", "check-quasi-iso"};
    } else {
      commands = {"milnor", "check-kb", "check-sum"};
    }
    std::optional<std::size_t> milnor, koszul_top, twisted_top;
    std::string kb_status;
    Json kb_left;
    bool degenerate = false;
    for (const auto& cmd : commands) {
      if (degenerate) {
        notes.push_back(cmd + " skipped: the log Koszul side is not finite-dimensional");
        continue;
      }
      auto outcome = run_single(cmd, f, c, t);
      if (outcome.verdict["status"] == "degenerate") {
        degenerate = true;
        res.degenerate = true;
      }
      if (outcome.code == exit_code::mismatch) res.failed = true;
      if (outcome.code == exit_code::unstable) res.unstable = true;
      const auto& v = outcome.verdict;
      if (cmd == "milnor") milnor = v["left"].get<std::size_t>();
      if (cmd == "check-kb") {
        kb_status = v["status"].get<std::string>();
        kb_left = v["left"];
        if (v["right"].is_array()) koszul_top = v["right"].back().get<std::size_t>();
        if (v["left"].is_array()) twisted_top = v["left"].back().get<std::size_t>();
      }
      reports.push_back(make_report(report_input(cmd, f), outcome.verdict,
                                    outcome.evidence.to_json(), std::nullopt));
    }
    if (milnor && m.expected_milnor && *milnor != *m.expected_milnor) {
      res.failed = true;
      notes.push_back("milnor number " + std::to_string(*milnor) +
                      " differs from expected " + std::to_string(*m.expected_milnor));
    }
    if (milnor && koszul_top && twisted_top) {
      if (*milnor == *koszul_top && *koszul_top == *twisted_top) {
        notes.push_back("milnor = koszul top = twisted top = " + std::to_string(*milnor));
      } else {
        res.failed = true;
        notes.push_back("milnor, koszul top and twisted top disagree");
      }
    }
    if (!f.ring()->has_divisor() && c.substitutions > 0 && milnor) {
      // Seeded from the run seed and the member name, independent of the
      // standard library's string hash.
      std::vector<std::uint32_t> key(m.name.begin(), m.name.end());
      key.push_back(static_cast<std::uint32_t>(c.seed));
      key.push_back(static_cast<std::uint32_t>(c.seed >> 32));
      std::seed_seq seq(key.begin(), key.end());
      std::mt19937_64 rng(seq);
      for (int s = 0; s < c.substitutions; ++s) {
        const auto g = random_unimodular_substitution(f, rng);
        const auto mg = milnor_number(g, parse_order(c.order)).value;
        if (mg != *milnor) {
          res.failed = true;
          notes.push_back("milnor number changed under substitution: " + to_string(g));
        }
        const auto kb = verdict_json(check_kontsevich_barannikov(g, t));
        if (kb["status"] != kb_status || kb["left"] != kb_left) {
          res.failed = true;
          notes.push_back("KB verdict changed under substitution: " + to_string(g));
        }
      }
      notes.push_back("milnor number and KB verdict checked under " +
                      std::to_string(c.substitutions) + " random substitutions");
    }
  } catch (const InputError& err) {
    res.errored = true;
    notes.push_back(std::string("error: ") + err.what());
  }
  if (res.failed) {
    status = "fail";
  } else if (res.errored) {
    status = "error";
  } else if (res.unstable) {
    status = "unstable";
  } else if (res.degenerate) {
    status = "degenerate";
  }
  res.json = {{"name", m.name}, {"f", m.f},           {"status", status},
              {"notes", notes}, {"reports", reports}};
  return res;
}

inline CommandOutcome run_corpus(const RunConfig& c, const Truncation& t) {
  std::ifstream in(c.corpus_path);
  if (!in) throw InputError("cannot open corpus file '" + c.corpus_path + "'");
  const auto members = read_corpus(in);

  std::vector<MemberResult> results(members.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < members.size(); i = next++)
      results[i] = run_member(members[i], c, t);
  };
  unsigned jobs = c.jobs ? c.jobs : std::max(1u, std::thread::hardware_concurrency());
  jobs = static_cast<unsigned>(std::min<std::size_t>(jobs, std::max<std::size_t>(1, members.size())));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  CommandOutcome out;
  bool failed = false, errored = false, unstable = false;
  std::size_t passed = 0, degenerate = 0;
  Json list = Json::array();
  for (auto& r : results) {
    failed = failed || r.failed;
    errored = errored || r.errored;
    unstable = unstable || r.unstable;
    if (r.json["status"] == "pass") ++passed;
    if (r.json["status"] == "degenerate") ++degenerate;
    list.push_back(std::move(r.json));
  }
  out.code = failed ? exit_code::mismatch
                    : errored ? exit_code::input_error
                              : unstable ? exit_code::unstable : exit_code::pass;
  const std::string status = failed ? "fail" : errored ? "error" : unstable ? "unstable" : "pass";
  out.verdict = {{"id", "corpus"},
                 {"left", passed},
                 {"right", members.size() - degenerate},
                 {"equal", passed == members.size() - degenerate},
                 {"certified", false},
                 {"status", status}};
  out.evidence.note(std::to_string(passed) + " of " + std::to_string(members.size()) +
                    " members passed, " + std::to_string(degenerate) + " degenerate");
  out.members = std::move(list);
  return out;
}

}  // namespace detail

/// Runs one command. Input problems never escape as exceptions: they map to
/// exit code 2 with the message in the report.
inline RunResult run_command(const RunConfig& c) {
  const auto start = std::chrono::steady_clock::now();
  RunResult result;
  ReportInput input{c.command, std::nullopt, c.vars, c.divisor};
  if (c.command != "corpus") input.f = c.f;
  try {
    const auto& names = known_commands();
    if (std::find(names.begin(), names.end(), c.command) == names.end())
      throw InputError("unknown command '" + c.command + "'");
    const Truncation t = effective_truncation(c);
    detail::CommandOutcome outcome;
    if (c.command == "corpus") {
      if (c.corpus_path.empty()) throw InputError("corpus needs a file path");
      outcome = detail::run_corpus(c, t);
    } else {
      if (c.f.empty()) throw InputError("no polynomial given (use -f)");
      const auto f = parse_polynomial(c.f, VariableDeclaration{c.vars, c.divisor});
      input = report_input(c.command, f);
      outcome = detail::run_single(c.command, f, c, t);
    }
    Json evidence = outcome.evidence.to_json();
    if (!outcome.members.is_null()) evidence["members"] = std::move(outcome.members);
    result.exit_code = outcome.code;
    result.report = make_report(
        input, std::move(outcome.verdict), std::move(evidence),
        c.timing ? std::optional<double>(detail::elapsed_ms(start)) : std::nullopt);
  } catch (const InputError& err) {
    result.exit_code = exit_code::input_error;
    result.report = detail::error_report(input, err.what());
  }
  result.output = c.format == OutputFormat::json ? result.report.dump(2) + "\n"
                                                 : report_text(result.report);
  return result;
}

}  // namespace tdw
