#include <cmath>
#include <iomanip>
#include <sstream>

#include "mobiprod/lp.hpp"

namespace mobiprod {

namespace {

void write_terms(std::ostream& out, const MipProblem& p,
                 const std::vector<Term>& terms) {
  bool first = true;
  for (const Term& t : terms) {
    if (t.coef == 0.0) continue;
    out << (t.coef < 0.0 ? " - " : (first ? " " : " + "))
        << std::abs(t.coef) << ' ' << p.names[t.var];
    first = false;
  }
  if (first) out << " 0 " << (p.num_vars() > 0 ? p.names[0] : "x0");
}

}  // namespace

void write_lp_format(const MipProblem& p, std::ostream& out) {
  out << std::setprecision(17);
  out << "\\ objective offset " << p.objective_offset << "\n";
  out << "Minimize\n obj:";
  std::vector<Term> obj;
  for (int j = 0; j < p.num_vars(); ++j) obj.push_back({j, p.objective[j]});
  write_terms(out, p, obj);
  out << "\nSubject To\n";
  for (const Constraint& c : p.constraints) {
    out << ' ' << c.name << ':';
    write_terms(out, p, c.terms);
    switch (c.sense) {
      case Sense::kLessEqual: out << " <= "; break;
      case Sense::kEqual: out << " = "; break;
      case Sense::kGreaterEqual: out << " >= "; break;
    }
    out << c.rhs << '\n';
  }
  out << "Bounds\n";
  for (int j = 0; j < p.num_vars(); ++j) {
    const double lo = p.lower[j], hi = p.upper[j];
    out << ' ';
    if (!std::isfinite(lo) && !std::isfinite(hi)) {
      out << p.names[j] << " free\n";
      continue;
    }
    if (std::isfinite(lo)) out << lo; else out << "-inf";
    out << " <= " << p.names[j] << " <= ";
    if (std::isfinite(hi)) out << hi; else out << "+inf";
    out << '\n';
  }
  bool any_int = false;
  for (int j = 0; j < p.num_vars(); ++j) {
    if (!p.integer[j]) continue;
    if (!any_int) out << "Generals\n";
    any_int = true;
    out << ' ' << p.names[j] << '\n';
  }
  out << "End\n";
}

std::string to_lp_format(const MipProblem& problem) {
  std::ostringstream out;
  write_lp_format(problem, out);
  return out.str();
}

}  // namespace mobiprod
