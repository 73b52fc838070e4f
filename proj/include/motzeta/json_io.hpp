#pragma once

#include "motzeta/dagger_series.hpp"
#include "motzeta/gamma.hpp"
#include "motzeta/jet_class.hpp"
#include "motzeta/resolution.hpp"

#include <json.hpp>

#include <string>

namespace motzeta {

using Json = nlohmann::json;

/// Integers that fit in 64 bits are numbers; larger ones are decimal strings.
Json integer_to_json(const Integer& z);
Integer integer_from_json(const Json& j);
/// Accepts an integer or a "p/q" string.
Rational rational_from_json(const Json& j);
Json rational_to_json(const Rational& r);

/// Sorted [[exponent, coefficient], ...]
Json laurent_to_json(const LaurentPoly& p);
LaurentPoly laurent_from_json(const Json& j);

/// {"num": [[t_exp, laurent], ...], "den": [[a, b], ...]}
Json series_to_json(const DaggerSeries& h);
DaggerSeries series_from_json(const Json& j);
Json prefix_to_json(const SeriesPrefix& p);

/// {"dim": n, "cells": [{"eq": [[c..., d]], "lt": [...], "le": [...]}]}
PolySet polyset_from_json(const Json& j);
Json polyset_to_json(const PolySet& s);
RationalCell cell_from_json(const Json& j, int dim);
Json cell_to_json(const RationalCell& c);

/// {"pieces": [{"guard": cell, "a": [...], "b": k}]}, or a single {"a": [...], "b": k}.
AffineFormPW form_from_json(const Json& j, int dim);

ResolutionData resolution_from_json(const Json& j);
Json resolution_to_json(const ResolutionData& r);

Json jet_result_to_json(const JetResult& r);

/// Reads and parses a JSON file, mapping failures to ParseError.
Json load_json_file(const std::string& path);
Json parse_json_text(const std::string& text);

} // namespace motzeta
