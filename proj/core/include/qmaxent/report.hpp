#pragma once

// JSON, CSV and SVG renderings of solver and geometry results. Output is a
// pure function of the input, so reports are reproducible byte for byte.

#include <string>

#include <nlohmann/json.hpp>

#include "qmaxent/correlation.hpp"
#include "qmaxent/faces.hpp"
#include "qmaxent/inference.hpp"
#include "qmaxent/numrange.hpp"

namespace qmaxent {

nlohmann::json complex_to_json(Complex z);
nlohmann::json vector_to_json(const RVector& v);
nlohmann::json vector_to_json(const CVector& v);
nlohmann::json state_to_json(const DensityMatrix& rho);

/// {"dim": int, "entries": [[re, im], ...]} row major, or a nested d x d
/// array of entries. Validated as a density matrix.
DensityMatrix state_from_json(const nlohmann::json& j);
/// Array of numbers, or of [re, im] pairs for complex vectors.
RVector real_vector_from_json(const nlohmann::json& j);
CVector complex_vector_from_json(const nlohmann::json& j);

nlohmann::json to_json(const FaceDescriptor& f);
nlohmann::json to_json(const MaxEntSolution& s);
nlohmann::json to_json(const ContinuityReport& r);
nlohmann::json to_json(const CurveProbe& p);
nlohmann::json to_json(const CandidateScan& s);
nlohmann::json to_json(const Reduction& r);
nlohmann::json to_json(const Analysis3x3& a);
nlohmann::json to_json(const FacetFiber& f);
nlohmann::json to_json(const GaugeScan& g);
nlohmann::json to_json(const C3Evaluation& c);
nlohmann::json to_json(const C3ProbeReport& r);

/// Flats, corners (each with its classification) and candidates.
nlohmann::json atlas_classification_json(const BoundaryAtlas& atlas, const CandidateScan& scan);

/// Per-angle boundary class used by the CSV and SVG outputs: "corner" when
/// the exposed point stays put over more than three angles, "flat" when the
/// exposed set is a segment, else "round".
std::vector<std::string> atlas_point_classes(const BoundaryAtlas& atlas);

/// theta,h,re,im,class with one row per exposed point.
std::string atlas_csv(const BoundaryAtlas& atlas);

/// Self-contained SVG of the boundary, flats, corners and candidates.
std::string atlas_svg(const BoundaryAtlas& atlas, const CandidateScan* scan = nullptr,
                      const std::string& title = "");

/// Successive trace distances and entropies along a probe schedule.
std::string probe_trace_svg(const ContinuityReport& r, const std::string& title = "");

}  // namespace qmaxent
