#pragma once

#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "simclass/canon2.hpp"
#include "simclass/canon3.hpp"
#include "simclass/census.hpp"
#include "simclass/matrix.hpp"

namespace simclass {

using Json = nlohmann::ordered_json;

Json rows_json(const Mat& a);
/// {"ring": ..., "n": ..., "entries": [[...], ...]}
Json mat_json(const Mat& a);
/// Accepts a matrix object, or a bare array of rows when ring is given.
Mat mat_from_json(const Json& j, const std::optional<RingCtx>& ring = std::nullopt);
Mat mat_from_text(const std::string& text, const std::optional<RingCtx>& ring = std::nullopt);

Json form_json(const CanonicalForm2& f);
Json form_json(const HardForm& f);
Json form_json(const CanonicalForm3& f);
Json count_vector_json(const CountVector& v);

} // namespace simclass
