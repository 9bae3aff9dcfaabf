#include "zsparse/sparse_set.hpp"

#include "zsparse/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace zsparse {
namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::uint64_t parse_base(const std::string& text) {
  Integer v = parse_integer(trim(text));
  if (v < 2 || !fits_u64(v)) throw DomainError("base must be an integer >= 2: '" + text + "'");
  return to_u64(v);
}

double log10_u64(std::uint64_t b) { return std::log10(static_cast<double>(b)); }

// Evaluates k1^(k2^(...^(km^n))) right to left, refusing results above `cap` digits.
// With `stop_above`, returns nullopt as soon as the value provably exceeds it.
std::optional<Integer> tower(const std::vector<std::uint64_t>& bases, std::uint64_t n, std::size_t cap,
                             const Integer* stop_above) {
  Integer exponent = from_u64(n);
  for (auto it = bases.rbegin(); it != bases.rend(); ++it) {
    double digits = fits_u64(exponent) ? static_cast<double>(to_u64(exponent)) * log10_u64(*it)
                                       : std::numeric_limits<double>::infinity();
    if (stop_above != nullptr) {
      double bound_digits = static_cast<double>(mpz_sizeinbase(stop_above->get_mpz_t(), 10));
      if (digits > bound_digits + 1) return std::nullopt;
    }
    if (digits > static_cast<double>(cap)) {
      throw DomainError("iterated power exceeds the digit cap of " + std::to_string(cap) + " digits");
    }
    exponent = pow(from_u64(*it), static_cast<unsigned long>(to_u64(exponent)));
  }
  return exponent;
}

}  // namespace

SparseSet SparseSet::powers(std::uint64_t q) {
  if (q < 2) throw DomainError("powers: base must be >= 2");
  return SparseSet(Powers{q});
}

SparseSet SparseSet::iterated_powers(std::vector<std::uint64_t> bases) {
  if (bases.empty()) throw DomainError("iter: at least one base is required");
  for (auto b : bases) {
    if (b < 2) throw DomainError("iter: every base must be >= 2");
  }
  return SparseSet(IteratedPowers{std::move(bases)});
}

SparseSet SparseSet::factorials() { return SparseSet(Factorials{}); }

SparseSet SparseSet::explicit_set(std::vector<Integer> elements) {
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (sgn(elements[i]) < 0) throw DomainError("explicit: elements must be natural numbers");
    if (i > 0 && !(elements[i - 1] < elements[i])) {
      throw DomainError("explicit: elements must be strictly increasing");
    }
  }
  return SparseSet(ExplicitSet{std::move(elements)});
}

SparseSet SparseSet::parse(const std::string& raw) {
  std::string text = trim(raw);
  auto colon = text.find(':');
  std::string head = text.substr(0, colon);
  std::string tail = colon == std::string::npos ? "" : text.substr(colon + 1);
  if (head == "powers" && colon != std::string::npos) return powers(parse_base(tail));
  if (head == "iter" && colon != std::string::npos) {
    std::vector<std::uint64_t> bases;
    for (const auto& part : split(tail, ',')) bases.push_back(parse_base(part));
    return iterated_powers(std::move(bases));
  }
  if (head == "factorials" && colon == std::string::npos) return factorials();
  if (head == "explicit" && colon != std::string::npos) {
    std::vector<Integer> elems;
    if (!trim(tail).empty()) {
      for (const auto& part : split(tail, ',')) elems.push_back(parse_integer(trim(part)));
    }
    return explicit_set(std::move(elems));
  }
  throw DomainError("unknown set descriptor '" + raw + "' (expected powers:q, iter:k1,..., factorials, explicit:...)");
}

std::string SparseSet::describe() const {
  return std::visit(overloaded{
                        [](const Powers& p) { return "powers:" + std::to_string(p.base); },
                        [](const IteratedPowers& p) {
                          std::string s = "iter:";
                          for (std::size_t i = 0; i < p.bases.size(); ++i) {
                            if (i) s += ',';
                            s += std::to_string(p.bases[i]);
                          }
                          return s;
                        },
                        [](const Factorials&) { return std::string("factorials"); },
                        [](const ExplicitSet& e) {
                          std::string s = "explicit:";
                          for (std::size_t i = 0; i < e.elements.size(); ++i) {
                            if (i) s += ',';
                            s += to_string(e.elements[i]);
                          }
                          return s;
                        },
                    },
                    kind_);
}

SparseSet SparseSet::with_digit_cap(std::size_t cap) const {
  SparseSet copy = *this;
  copy.digit_cap_ = cap;
  return copy;
}

Integer SparseSet::nth_element(std::size_t i) const {
  return std::visit(overloaded{
                        [&](const Powers& p) { return pow(from_u64(p.base), static_cast<unsigned long>(i + 1)); },
                        [&](const IteratedPowers& p) { return *tower(p.bases, i + 1, digit_cap_, nullptr); },
                        [&](const Factorials&) { return i == 0 ? Integer(0) : factorial(static_cast<unsigned long>(i)); },
                        [&](const ExplicitSet& e) {
                          if (i >= e.elements.size()) {
                            throw DomainError("index " + std::to_string(i) + " out of range for explicit set of size " +
                                              std::to_string(e.elements.size()));
                          }
                          return e.elements[i];
                        },
                    },
                    kind_);
}

bool SparseSet::contains(const Integer& z) const {
  return std::visit(overloaded{
                        [&](const Powers& p) {
                          Integer q = from_u64(p.base);
                          if (z < q) return false;
                          Integer v = z;
                          while (v > 1) {
                            if (!mpz_divisible_p(v.get_mpz_t(), q.get_mpz_t())) return false;
                            mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), q.get_mpz_t());
                          }
                          return true;
                        },
                        [&](const IteratedPowers& p) {
                          if (sgn(z) <= 0) return false;
                          for (std::uint64_t n = 1;; ++n) {
                            auto v = tower(p.bases, n, digit_cap_, &z);
                            if (!v || *v > z) return false;
                            if (*v == z) return true;
                          }
                        },
                        [&](const Factorials&) {
                          if (sgn(z) < 0) return false;
                          if (z <= 2) return true;
                          Integer f = 2;
                          for (unsigned long m = 3; f < z; ++m) f *= m;
                          return f == z;
                        },
                        [&](const ExplicitSet& e) { return std::binary_search(e.elements.begin(), e.elements.end(), z); },
                    },
                    kind_);
}

std::optional<std::size_t> SparseSet::size() const {
  if (const auto* e = std::get_if<ExplicitSet>(&kind_)) return e->elements.size();
  return std::nullopt;
}

bool SparseSet::provably_sparse() const { return !std::holds_alternative<ExplicitSet>(kind_); }

std::vector<Integer> SparseSet::prefix(std::size_t count) const {
  if (auto n = size()) count = std::min(count, *n);
  std::vector<Integer> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(nth_element(i));
  return out;
}

bool operator==(const SparseSet& a, const SparseSet& b) { return a.describe() == b.describe(); }

GapProfile sparseness_check(const SparseSet& set, std::size_t prefix_length) {
  if (prefix_length < 3) throw DomainError("sparseness_check: prefix_length must be >= 3");
  auto elems = set.prefix(prefix_length);
  GapProfile profile;
  profile.provably_sparse = set.provably_sparse();
  for (std::size_t i = 1; i < elems.size(); ++i) profile.gaps.push_back(elems[i] - elems[i - 1]);
  const auto& g = profile.gaps;
  if (g.size() < 2) return profile;
  // Walk back from the end while the gaps keep increasing strictly.
  std::size_t k = g.size() - 1;
  while (k > 0 && g[k - 1] < g[k]) --k;
  if (k + 1 < g.size()) profile.threshold_index = k;
  return profile;
}

}  // namespace zsparse
