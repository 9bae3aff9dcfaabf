#include "zsparse/errors.hpp"
#include "zsparse/formula.hpp"

namespace zsparse {

LinearTerm LinearTerm::variable(const std::string& name, const Integer& coefficient) {
  if (name.empty()) throw DomainError("variable names must be nonempty");
  LinearTerm t;
  t.add_coefficient(name, coefficient);
  return t;
}

void LinearTerm::add_coefficient(const std::string& name, const Integer& k) {
  if (k == 0) return;
  auto [it, inserted] = coeffs_.emplace(name, k);
  if (!inserted) {
    it->second += k;
    if (it->second == 0) coeffs_.erase(it);
  }
}

Integer LinearTerm::coefficient(const std::string& name) const {
  auto it = coeffs_.find(name);
  return it == coeffs_.end() ? Integer(0) : it->second;
}

std::set<std::string> LinearTerm::variables() const {
  std::set<std::string> out;
  for (const auto& [v, k] : coeffs_) out.insert(v);
  return out;
}

LinearTerm LinearTerm::operator+(const LinearTerm& o) const {
  LinearTerm out = *this;
  for (const auto& [v, k] : o.coeffs_) out.add_coefficient(v, k);
  out.constant_ += o.constant_;
  return out;
}

LinearTerm LinearTerm::operator-(const LinearTerm& o) const { return *this + (-o); }

LinearTerm LinearTerm::operator-() const { return *this * Integer(-1); }

LinearTerm LinearTerm::operator*(const Integer& k) const {
  LinearTerm out;
  if (k == 0) return out;
  for (const auto& [v, c] : coeffs_) out.coeffs_.emplace(v, c * k);
  out.constant_ = constant_ * k;
  return out;
}

LinearTerm LinearTerm::substitute(const std::string& name, const LinearTerm& value) const {
  auto it = coeffs_.find(name);
  if (it == coeffs_.end()) return *this;
  Integer k = it->second;
  return without(name) + value * k;
}

LinearTerm LinearTerm::without(const std::string& name) const {
  LinearTerm out = *this;
  out.coeffs_.erase(name);
  return out;
}

Integer LinearTerm::evaluate(const Assignment& assignment) const {
  Integer sum = constant_;
  for (const auto& [v, k] : coeffs_) {
    auto it = assignment.find(v);
    if (it == assignment.end()) throw DomainError("unassigned free variable: " + v);
    sum += k * it->second;
  }
  return sum;
}

std::string LinearTerm::to_string() const {
  std::string out;
  auto emit = [&](const Integer& k, const std::string& var) {
    bool negative = sgn(k) < 0;
    Integer mag = abs(k);
    if (out.empty()) {
      if (negative) out += "-";
    } else {
      out += negative ? " - " : " + ";
    }
    if (var.empty()) {
      out += zsparse::to_string(mag);
    } else {
      if (mag != 1) out += zsparse::to_string(mag) + "*";
      out += var;
    }
  };
  for (const auto& [v, k] : coeffs_) emit(k, v);
  if (constant_ != 0 || out.empty()) {
    if (out.empty() && constant_ == 0) return "0";
    emit(constant_, "");
  }
  return out;
}

Atom Atom::congruence(LinearTerm t, std::uint64_t n) {
  if (n < 2) throw DomainError("modulus must be >= 2");
  return Atom{AtomKind::CongruenceZero, std::move(t), n};
}

bool Atom::holds(const Assignment& assignment) const {
  Integer v = term.evaluate(assignment);
  switch (kind) {
    case AtomKind::Eq0:
      return v == 0;
    case AtomKind::Neq0:
      return v != 0;
    case AtomKind::CongruenceZero:
      return floor_mod(v, modulus) == 0;
  }
  return false;
}

std::optional<bool> Atom::ground_value() const {
  if (!term.is_constant()) return std::nullopt;
  return holds({});
}

Atom Atom::substitute(const std::string& name, const LinearTerm& value) const {
  Atom out = *this;
  out.term = term.substitute(name, value);
  return out;
}

Atom Atom::canonical() const {
  if (kind != AtomKind::CongruenceZero) return *this;
  LinearTerm t(from_u64(floor_mod(term.constant(), modulus)));
  for (const auto& [v, k] : term.coefficients()) {
    t = t + LinearTerm::variable(v, from_u64(floor_mod(k, modulus)));
  }
  return Atom{kind, t, modulus};
}

std::string Atom::to_string() const {
  switch (kind) {
    case AtomKind::Eq0:
      return term.to_string() + " = 0";
    case AtomKind::Neq0:
      return term.to_string() + " != 0";
    case AtomKind::CongruenceZero:
      return term.to_string() + " =mod " + std::to_string(modulus) + " 0";
  }
  return {};
}

std::vector<Atom> DNFClause::atoms() const {
  std::vector<Atom> out = equalities;
  out.insert(out.end(), disequalities.begin(), disequalities.end());
  out.insert(out.end(), congruences.begin(), congruences.end());
  return out;
}

bool DNFClause::holds(const Assignment& assignment) const {
  for (const auto& a : atoms()) {
    if (!a.holds(assignment)) return false;
  }
  return true;
}

GroupFormula DNFClause::to_formula() const {
  std::vector<GroupFormula> parts;
  for (const auto& a : atoms()) parts.push_back(GroupFormula::atom(a));
  return GroupFormula::conjunction(std::move(parts));
}

}  // namespace zsparse
