#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "parind/coinvariants.hpp"
#include "parind/hecke.hpp"
#include "parind/homotopy.hpp"
#include "parind/induction.hpp"
#include "parind/smod.hpp"

namespace parind {

using json = nlohmann::json;

/// 1-based letters.
json word_to_json(const std::vector<int>& word);
std::vector<int> word_from_json(const json& j);

json to_json(const Rational& r);
Rational rational_from_json(const json& j);

/// [[exponent, "coefficient"], ...] in increasing exponent order.
json to_json(const LaurentPoly& p);
LaurentPoly laurent_from_json(const json& j);

/// {"terms": [{"word": [...], "poly": {"<exponent>": "<coefficient>"}}, ...]} in element order.
json to_json(const HeckeElement& h);
HeckeElement hecke_from_json(const WeylGroup& group, const json& j);

json to_json(const RootSystem& rs);
json to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

json to_json(const CoinvariantAlgebra::Data& d);
CoinvariantAlgebra::Data coinvariant_data_from_json(const json& j);

json to_json(const Catalog& c);
/// {"twist", "terms": {degree: [{y, shift}]}, "differential": [{degree, from, to,
/// map_degree, blocks}]}; from/to are positions within their degree.
json to_json(const ComplexOfModules& x);
ComplexOfModules complex_from_json(std::shared_ptr<const Catalog> catalog, const json& j);

json to_json(const Report& r);
Report report_from_json(const json& j);
json to_json(const CalibrationResult& c);

/// Coinvariant algebra for (group, subset), read from
/// <cache_dir>/<label>-<hash>.json when present and written there after a
/// fresh computation. An empty cache_dir disables the cache. A cached file
/// whose record does not match the request is ignored and rewritten.
AlgebraPtr load_or_build_algebra(const WeylGroup& group, const std::vector<int>& subset, const std::string& cache_dir);
std::string cache_file_name(const RootSystem& rs, const std::vector<int>& subset);

}  // namespace parind
