#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "xiga/boundary.hpp"
#include "xiga/crack.hpp"
#include "xiga/material.hpp"
#include "xiga/modal.hpp"
#include "xiga/patch.hpp"
#include "xiga/shapes.hpp"

namespace xiga {

// Configuration or input-data problem: maps to exit code 2.
struct InputError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

enum class GeometryKind { Square, Disk, HalfAnnulus };

struct CaseConfig {
    std::string name = "case";

    GeometryKind geometry = GeometryKind::Square;
    double length = 1.0, width = 1.0;        // square
    double radius = 1.0;                     // disk
    double r_inner = 0.5, r_outer = 1.0;     // half annulus
    double thickness = 0.1;

    Constituent ceramic{}, metal{};
    double exponent = 0.0;
    Homogenization scheme = Homogenization::RuleOfMixture;

    PlateTheory theory = PlateTheory::third_order();

    std::optional<std::pair<Eigen::Vector2d, Eigen::Vector2d>> crack;

    BoundarySpec boundary;
    // Solve the mirror-plane half model once per parity family
    // (Symmetry edges swapped to AntiSymmetry for the second pass) and
    // merge the spectra. This is what a half model of a full plate
    // needs in order to report the complete mode sequence.
    bool mirror_both_parities = false;

    int degree = 3;
    int elements = 21;
    int n_modes = 8;
    CutQuadrature quadrature = CutQuadrature::Conforming;

    Normalization normalization = Normalization::None;
    bool normalize_with_ceramic = true;
    // Span choice for the normalization length; resolved against the
    // geometry at run time.
    std::string span_choice = "length";
    double span_value = 0.0; // used when span_choice == "value"

    static CaseConfig from_json(const nlohmann::json& j);
    static CaseConfig from_file(const std::string& path);

    double resolved_span() const;
    NormalizationInput normalization_input() const;
};

struct CaseRun {
    CaseConfig config;
    Patch patch;
    EnrichmentPlan plan;
    std::optional<CrackModel> crack;
    DofMap dofs;
    ConstraintSet constraints;
    ModalResult modal;
    std::vector<double> normalized;
    std::string convention;
    double assemble_seconds = 0.0;
    double solve_seconds = 0.0;
};

CaseRun run_case(const CaseConfig& cfg);

// frequencies.csv payload: "mode,omega_rad_s,normalized,convention".
std::string frequencies_csv(const CaseRun& run);

// Reference data for CLI comparison: entries grouped by case name.
struct ReferenceEntry {
    std::string case_name;
    int mode;
    double value;
    double tolerance;
};

struct ReferenceTable {
    std::string label;
    double default_tolerance = 0.01;
    std::vector<ReferenceEntry> entries;

    static ReferenceTable from_file(const std::string& path);
};

} // namespace xiga
