// JSON encodings of library results. Integers are always decimal strings.
#pragma once

#include "json.hpp"
#include "zsparse/abelian.hpp"
#include "zsparse/equation_solver.hpp"
#include "zsparse/exponent_arith.hpp"
#include "zsparse/gamma_solver.hpp"
#include "zsparse/sparse_set.hpp"

namespace zsparse::cli {

using nlohmann::json;

json to_json(const Integer& v);
json to_json(const std::vector<Integer>& v);
json u64s(const std::vector<std::uint64_t>& v);

json to_json(const ExponentClassSet& s);
json to_json(const FacClassResult& r);
json to_json(const GapProfile& g);
json to_json(const ScaleOrbitFamily& f);
json to_json(const FactorialSolutionDescription& d);
json to_json(const CoverReport& r);
json to_json(const VerificationTrace& t);
json to_json(const GammaReport& r);
json to_json(const AdaptedBasis& b);
json to_json(const CharacteristicReport& r);

}  // namespace zsparse::cli
