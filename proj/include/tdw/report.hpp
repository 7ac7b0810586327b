#pragma once

#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "tdw/checks.hpp"
#include "tdw/cohomology.hpp"
#include "tdw/groebner.hpp"
#include "tdw/polynomial.hpp"

namespace tdw {

using Json = nlohmann::ordered_json;

/// The "input" block of a report.
struct ReportInput {
  std::string command;
  std::optional<std::string> f;
  std::vector<std::string> vars;
  std::vector<std::string> divisor;
};

inline std::vector<std::string> divisor_names(const Ring& ring) {
  std::vector<std::string> out;
  for (std::size_t i : ring.divisor_indices()) out.push_back(ring.name(i));
  return out;
}

inline ReportInput report_input(std::string command, const LaurentPolynomial& f) {
  return {std::move(command), to_string(f), f.ring()->names(),
          divisor_names(*f.ring())};
}

inline Json dims_json(const DimensionReport& r) {
  return r.stable ? Json(r.dims) : Json(nullptr);
}

inline Json trace_json(const DimensionReport& r) {
  Json out = Json::array();
  for (const auto& level : r.trace)
    out.push_back({{"degree_bound", level.degree_bound},
                   {"pole_bound", level.pole_bound},
                   {"dims", level.dims}});
  return out;
}

inline Json staircase_json(const std::vector<ExponentVector>& basis, const Ring& ring) {
  Json out = Json::array();
  for (const auto& e : basis) out.push_back(monomial_string(e, ring));
  return out;
}

/// Evidence collected per named side: staircases, truncation traces and
/// free-form notes.
class Evidence {
 public:
  void add(const std::string& side, const DimensionReport& r, const Ring& ring) {
    staircase_[side] = staircase_json(r.staircase, ring);
    trace_[side] = trace_json(r);
    for (const auto& n : r.notes) notes_.push_back(side + ": " + n);
  }

  void note(std::string text) { notes_.push_back(std::move(text)); }

  void add_verdict(const TheoremVerdict& v, const Ring& ring,
                   const std::string& prefix = "") {
    for (const auto& n : v.notes) note(prefix + n);
    if (v.parts.empty()) {
      if (v.status == VerdictStatus::degenerate) return;
      add(prefix + "left", v.left, ring);
      add(prefix + "right", v.right, ring);
      return;
    }
    for (const auto& part : v.parts) add_verdict(part, ring, prefix + part.id + ".");
  }

  Json to_json() const {
    return {{"staircase", staircase_}, {"truncation_trace", trace_}, {"notes", notes_}};
  }

 private:
  Json staircase_ = Json::object();
  Json trace_ = Json::object();
  Json notes_ = Json::array();
};

inline Json verdict_json(const TheoremVerdict& v) {
  Json out;
  out["id"] = v.id;
  if (v.parts.empty() && v.status != VerdictStatus::degenerate) {
    out["left"] = dims_json(v.left);
    out["right"] = dims_json(v.right);
  } else {
    out["left"] = nullptr;
    out["right"] = nullptr;
  }
  out["equal"] = v.equal;
  out["certified"] = v.certified;
  out["status"] = to_string(v.status);
  if (!v.parts.empty()) {
    out["parts"] = Json::array();
    for (const auto& p : v.parts) out["parts"].push_back(verdict_json(p));
  }
  return out;
}

/// Verdict block for a single computation with no right-hand side.
inline Json result_verdict_json(const std::string& id, Json value, bool certified,
                                const std::string& status) {
  return {{"id", id},          {"left", std::move(value)}, {"right", nullptr},
          {"equal", nullptr},  {"certified", certified},   {"status", status}};
}

/// Assembles a report with the fixed top-level key order.
inline Json make_report(const ReportInput& in, Json verdict, Json evidence,
                        std::optional<double> timing_ms) {
  Json input;
  input["f"] = in.f ? Json(*in.f) : Json(nullptr);
  input["vars"] = in.vars;
  input["divisor"] = in.divisor;
  Json out;
  out["command"] = in.command;
  out["input"] = std::move(input);
  out["verdict"] = std::move(verdict);
  out["evidence"] = std::move(evidence);
  out["timing_ms"] = timing_ms ? Json(*timing_ms) : Json(nullptr);
  return out;
}

namespace detail {

inline std::string dims_text(const Json& dims) {
  if (dims.is_null()) return "unstable";
  if (!dims.is_array()) return dims.dump();
  std::string out = "[";
  for (std::size_t i = 0; i < dims.size(); ++i)
    out += (i ? ", " : "") + dims[i].dump();
  return out + "]";
}

inline void verdict_text(std::ostringstream& os, const Json& v, const std::string& indent) {
  os << indent << v["id"].get<std::string>() << ": ";
  if (v.contains("parts")) {
    os << v["status"].get<std::string>() << "\n";
    for (const auto& p : v["parts"]) verdict_text(os, p, indent + "  ");
    return;
  }
  if (v["status"] == "degenerate") {
    os << "degenerate\n";
    return;
  }
  if (v["right"].is_null() && v["equal"].is_null()) {
    os << dims_text(v["left"]);
    if (v.contains("scope")) os << " (" << v["scope"].get<std::string>() << ")";
  } else {
    os << dims_text(v["left"]) << " vs " << dims_text(v["right"]);
  }
  os << "  " << v["status"].get<std::string>();
  if (v["certified"].get<bool>()) os << ", certified";
  os << "\n";
}

}  // namespace detail

/// Short human-readable rendering of a report.
inline std::string report_text(const Json& report) {
  std::ostringstream os;
  os << report["command"].get<std::string>();
  const auto& in = report["input"];
  if (!in["f"].is_null()) os << "  f = " << in["f"].get<std::string>();
  if (!in["divisor"].empty()) {
    os << "  divisor {";
    for (std::size_t i = 0; i < in["divisor"].size(); ++i)
      os << (i ? "," : "") << in["divisor"][i].get<std::string>();
    os << "}";
  }
  os << "\n";
  if (report.contains("error")) {
    os << "  error: " << report["error"].get<std::string>() << "\n";
    return os.str();
  }
  const auto& ev = report["evidence"];
  if (!report["verdict"].is_null()) {
    const auto& v = report["verdict"];
    detail::verdict_text(os, v, "  ");
    if (v["status"] != "pass" && !ev.contains("members"))
      for (const auto& n : ev["notes"]) os << "  note: " << n.get<std::string>() << "\n";
  }
  if (ev.contains("members")) {
    for (const auto& m : ev["members"]) {
      os << "  " << m["name"].get<std::string>() << ": "
         << m["status"].get<std::string>() << "\n";
      for (const auto& r : m["reports"])
        if (!r["verdict"].is_null())
          detail::verdict_text(os, r["verdict"], "    ");
      for (const auto& n : m["notes"]) os << "    note: " << n.get<std::string>() << "\n";
    }
  }
  return os.str();
}

}  // namespace tdw
