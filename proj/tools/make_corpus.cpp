// Writes the regression corpus as JSON lines. Expected Milnor numbers are
// not typed in by hand: each one is the staircase count of Q[x]/J(f)
// computed here, and the line records that as its provenance.
//
//   make_corpus > data/corpus.jsonl

#include <iostream>
#include <string>
#include <utility>
#include <vector>

#include "tdw/checks.hpp"
#include "tdw/parser.hpp"
#include "tdw/report.hpp"

namespace {

struct Entry {
  std::string name;
  std::string f;
  std::vector<std::string> vars;
  std::vector<std::string> divisor;
};

std::vector<Entry> entries() {
  std::vector<Entry> out;
  for (int k = 1; k <= 6; ++k)
    out.push_back({"A" + std::to_string(k), "x^" + std::to_string(k + 1), {"x"}, {}});
  out.push_back({"D4", "x^2*y + y^3", {"x", "y"}, {}});
  out.push_back({"E6", "x^3 + y^4", {"x", "y"}, {}});
  out.push_back({"E7", "x^3 + x*y^3", {"x", "y"}, {}});
  out.push_back({"E8", "x^3 + y^5", {"x", "y"}, {}});
  for (int p = 2; p <= 5; ++p)
    for (int q = 2; q <= 5; ++q)
      out.push_back({"brieskorn-" + std::to_string(p) + "-" + std::to_string(q),
                     "x^" + std::to_string(p) + " + y^" + std::to_string(q),
                     {"x", "y"},
                     {}});
  out.push_back({"quadric-3", "x^2 + y^2 + z^2", {"x", "y", "z"}, {}});
  out.push_back({"fermat-cubic-3", "x^3 + y^3 + z^3", {"x", "y", "z"}, {}});
  out.push_back({"two-A1", "x^3 - 3*x", {"x"}, {}});
  out.push_back({"double-well", "(x^2 - 1)^2", {"x"}, {}});

  out.push_back({"log-linear", "x", {"x"}, {"x"}});
  out.push_back({"log-square", "x^2", {"x"}, {"x"}});
  out.push_back({"log-x-plus-y2", "x + y^2", {"x", "y"}, {"x"}});
  out.push_back({"log-x-plus-y", "x + y", {"x", "y"}, {"x", "y"}});
  out.push_back({"log-cubic", "x^3 + y^3", {"x", "y"}, {"x"}});
  out.push_back({"log-linear-3", "x + y + z", {"x", "y", "z"}, {"x", "y", "z"}});
  out.push_back({"log-degenerate-xy", "x*y", {"x", "y"}, {"x"}});
  return out;
}

}  // namespace

int main() {
  for (const auto& e : entries()) {
    const auto f = tdw::parse_polynomial(e.f, tdw::VariableDeclaration{e.vars, e.divisor});
    tdw::Json line;
    line["name"] = e.name;
    line["f"] = e.f;
    line["vars"] = e.vars;
    if (!e.divisor.empty()) line["divisor"] = e.divisor;
    if (e.divisor.empty()) {
      const auto m = tdw::milnor_number(f);
      line["expected"] = {
          {"milnor", m.value},
          {"provenance",
           "derived: staircase count of Q[x]/J(f), degrevlex, by make_corpus"}};
    }
    std::cout << line.dump() << "\n";
  }
}
