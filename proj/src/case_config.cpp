#include "xiga/case_config.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>
#include <spdlog/spdlog.h>

namespace xiga {

namespace {

using nlohmann::json;

[[noreturn]] void bad_field(const std::string& field, const std::string& why) {
    throw InputError(fmt::format("config field '{}': {}", field, why));
}

template <typename T>
T require(const json& j, const std::string& field) {
    if (!j.contains(field)) bad_field(field, "missing");
    try {
        return j.at(field).get<T>();
    } catch (const json::exception& e) {
        bad_field(field, e.what());
    }
}

template <typename T>
T optional_or(const json& j, const std::string& field, T fallback) {
    if (!j.contains(field)) return fallback;
    try {
        return j.at(field).get<T>();
    } catch (const json::exception& e) {
        bad_field(field, e.what());
    }
}

Constituent parse_constituent(const json& j, const std::string& field) {
    if (j.is_string()) return material_preset(j.get<std::string>());
    if (!j.is_object()) bad_field(field, "expected preset name or object");
    Constituent c;
    c.young = require<double>(j, "young");
    c.poisson = require<double>(j, "poisson");
    c.density = require<double>(j, "density");
    return c;
}

EdgeCondition parse_edge(const std::string& s, const std::string& field) {
    if (s == "free") return EdgeCondition::Free;
    if (s == "ss") return EdgeCondition::SimplySupported;
    if (s == "soft-ss") return EdgeCondition::SoftSimplySupported;
    if (s == "clamped") return EdgeCondition::Clamped;
    if (s == "symmetry") return EdgeCondition::Symmetry;
    if (s == "antisymmetry") return EdgeCondition::AntiSymmetry;
    bad_field(field, fmt::format("unknown edge condition '{}'", s));
}

BoundarySpec parse_boundary(const json& j, bool& mirror_both) {
    BoundarySpec bc;
    mirror_both = false;
    if (j.contains("preset")) {
        const auto p = j.at("preset").get<std::string>();
        if (p == "ssss")
            bc = BoundarySpec::all(EdgeCondition::SimplySupported);
        else if (p == "ssss-soft")
            bc = BoundarySpec::all(EdgeCondition::SoftSimplySupported);
        else if (p == "cccc")
            bc = BoundarySpec::all(EdgeCondition::Clamped);
        else if (p == "cantilever-umin" || p == "cantilever-umax" ||
                 p == "cantilever-vmin" || p == "cantilever-vmax") {
            bc = BoundarySpec::all(EdgeCondition::Free);
            const std::string which = p.substr(11);
            const int idx = which == "umin" ? 0 : which == "umax" ? 1
                            : which == "vmin" ? 2 : 3;
            bc.edge[idx] = EdgeCondition::Clamped;
        } else if (p == "annulus-symmetric") {
            bc.edge = {EdgeCondition::Symmetry, EdgeCondition::Symmetry,
                       EdgeCondition::Free, EdgeCondition::Clamped};
        } else if (p == "annulus-antisymmetric") {
            bc.edge = {EdgeCondition::AntiSymmetry, EdgeCondition::AntiSymmetry,
                       EdgeCondition::Free, EdgeCondition::Clamped};
        } else if (p == "annulus-split") {
            bc.edge = {EdgeCondition::Symmetry, EdgeCondition::Symmetry,
                       EdgeCondition::Free, EdgeCondition::Clamped};
            mirror_both = true;
        } else {
            bad_field("boundary.preset", fmt::format("unknown preset '{}'", p));
        }
    } else if (j.contains("edges")) {
        const auto edges = j.at("edges");
        if (!edges.is_array() || edges.size() != 4)
            bad_field("boundary.edges", "expected 4 entries (umin, umax, vmin, vmax)");
        for (int e = 0; e < 4; ++e)
            bc.edge[e] = parse_edge(edges.at(e).get<std::string>(), "boundary.edges");
    } else {
        bad_field("boundary", "need 'preset' or 'edges'");
    }
    bc.release_radius = optional_or<double>(j, "release_radius", 0.0);
    return bc;
}

} // namespace

CaseConfig CaseConfig::from_json(const json& j) {
    CaseConfig cfg;
    const int version = require<int>(j, "version");
    if (version != 1) bad_field("version", "only version 1 is understood");
    cfg.name = optional_or<std::string>(j, "name", "case");

    const json& g = j.contains("geometry") ? j.at("geometry")
                                           : throw InputError("config field 'geometry': missing");
    const auto kind = require<std::string>(g, "kind");
    if (kind == "square") {
        cfg.geometry = GeometryKind::Square;
        cfg.length = require<double>(g, "length");
        cfg.width = require<double>(g, "width");
    } else if (kind == "disk") {
        cfg.geometry = GeometryKind::Disk;
        cfg.radius = require<double>(g, "radius");
    } else if (kind == "half_annulus") {
        cfg.geometry = GeometryKind::HalfAnnulus;
        cfg.r_inner = require<double>(g, "r_inner");
        cfg.r_outer = require<double>(g, "r_outer");
    } else {
        bad_field("geometry.kind", fmt::format("unknown kind '{}'", kind));
    }
    cfg.thickness = require<double>(j, "thickness");
    if (!(cfg.thickness > 0.0)) bad_field("thickness", "must be positive");

    const json& m = j.contains("material") ? j.at("material")
                                           : throw InputError("config field 'material': missing");
    if (m.contains("solid")) {
        cfg.ceramic = cfg.metal = parse_constituent(m.at("solid"), "material.solid");
        cfg.exponent = 0.0;
        cfg.scheme = Homogenization::RuleOfMixture;
    } else {
        cfg.ceramic = parse_constituent(
            m.contains("ceramic") ? m.at("ceramic")
                                  : throw InputError("config field 'material.ceramic': missing"),
            "material.ceramic");
        cfg.metal = parse_constituent(
            m.contains("metal") ? m.at("metal")
                                : throw InputError("config field 'material.metal': missing"),
            "material.metal");
        cfg.exponent = require<double>(m, "exponent");
        const auto scheme = optional_or<std::string>(m, "scheme", "rule-of-mixture");
        if (scheme == "rule-of-mixture")
            cfg.scheme = Homogenization::RuleOfMixture;
        else if (scheme == "mori-tanaka")
            cfg.scheme = Homogenization::MoriTanaka;
        else
            bad_field("material.scheme", fmt::format("unknown scheme '{}'", scheme));
    }

    if (j.contains("theory")) {
        const json& t = j.at("theory");
        const auto model = optional_or<std::string>(t, "model", "third-order");
        if (model == "third-order")
            cfg.theory = PlateTheory::third_order();
        else if (model == "first-order")
            cfg.theory = PlateTheory::first_order(
                optional_or<double>(t, "shear_correction", 5.0 / 6.0));
        else
            bad_field("theory.model", fmt::format("unknown model '{}'", model));
    }

    if (j.contains("crack")) {
        const json& c = j.at("crack");
        const auto a = require<std::vector<double>>(c, "a");
        const auto b = require<std::vector<double>>(c, "b");
        if (a.size() != 2 || b.size() != 2)
            bad_field("crack", "endpoints must be [x, y] pairs");
        cfg.crack = {{Eigen::Vector2d(a[0], a[1]), Eigen::Vector2d(b[0], b[1])}};
    }

    cfg.boundary = parse_boundary(
        j.contains("boundary") ? j.at("boundary")
                               : throw InputError("config field 'boundary': missing"),
        cfg.mirror_both_parities);

    const json& mesh = j.contains("mesh") ? j.at("mesh")
                                          : throw InputError("config field 'mesh': missing");
    cfg.degree = require<int>(mesh, "degree");
    cfg.elements = require<int>(mesh, "elements");
    if (cfg.degree < 2) bad_field("mesh.degree", "plate kinematics need degree >= 2");
    if (cfg.elements < 1) bad_field("mesh.elements", "must be >= 1");

    cfg.n_modes = optional_or<int>(j, "n_modes", 8);
    if (cfg.n_modes < 1) bad_field("n_modes", "must be >= 1");

    const auto quad = optional_or<std::string>(j, "quadrature", "conforming");
    if (quad == "conforming")
        cfg.quadrature = CutQuadrature::Conforming;
    else if (quad == "full-gauss")
        cfg.quadrature = CutQuadrature::FullGauss;
    else
        bad_field("quadrature", "expected 'conforming' or 'full-gauss'");

    if (j.contains("normalization")) {
        const json& n = j.at("normalization");
        cfg.normalization =
            normalization_from_name(optional_or<std::string>(n, "kind", "angular"));
        const auto ref = optional_or<std::string>(n, "reference", "ceramic");
        if (ref == "ceramic")
            cfg.normalize_with_ceramic = true;
        else if (ref == "metal")
            cfg.normalize_with_ceramic = false;
        else
            bad_field("normalization.reference", "expected 'ceramic' or 'metal'");
        if (n.contains("span") && n.at("span").is_number()) {
            cfg.span_choice = "value";
            cfg.span_value = n.at("span").get<double>();
        } else {
            cfg.span_choice = optional_or<std::string>(n, "span", "length");
        }
    }
    return cfg;
}

CaseConfig CaseConfig::from_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw InputError(fmt::format("cannot open config '{}'", path));
    json j;
    try {
        is >> j;
    } catch (const json::exception& e) {
        throw InputError(fmt::format("config '{}' is not valid JSON: {}", path, e.what()));
    }
    CaseConfig cfg = from_json(j);
    if (cfg.name == "case") {
        auto slash = path.find_last_of('/');
        auto base = path.substr(slash == std::string::npos ? 0 : slash + 1);
        if (auto dot = base.rfind(".json"); dot != std::string::npos)
            base = base.substr(0, dot);
        cfg.name = base;
    }
    return cfg;
}

double CaseConfig::resolved_span() const {
    if (span_choice == "value") return span_value;
    if (span_choice == "length") {
        if (geometry == GeometryKind::Square) return length;
        if (geometry == GeometryKind::Disk) return radius;
        return r_outer;
    }
    if (span_choice == "width") return width;
    if (span_choice == "radius") {
        if (geometry == GeometryKind::Disk) return radius;
        if (geometry == GeometryKind::HalfAnnulus) return r_outer;
        bad_field("normalization.span", "'radius' needs a circular geometry");
    }
    if (span_choice == "gap") {
        if (geometry == GeometryKind::HalfAnnulus) return r_outer - r_inner;
        bad_field("normalization.span", "'gap' needs the half-annulus geometry");
    }
    bad_field("normalization.span", fmt::format("unknown span '{}'", span_choice));
}

NormalizationInput CaseConfig::normalization_input() const {
    const Constituent& ref = normalize_with_ceramic ? ceramic : metal;
    NormalizationInput in;
    in.span = resolved_span();
    in.thickness = thickness;
    in.young_ref = ref.young;
    in.poisson_ref = ref.poisson;
    in.density_ref = ref.density;
    return in;
}

CaseRun run_case(const CaseConfig& cfg) {
    using clock = std::chrono::steady_clock;

    Patch patch = [&] {
        switch (cfg.geometry) {
        case GeometryKind::Square:
            return square_patch(cfg.length, cfg.width, cfg.degree, cfg.elements);
        case GeometryKind::Disk:
            return circular_patch(cfg.radius, cfg.degree, cfg.elements);
        case GeometryKind::HalfAnnulus:
            return half_annulus_patch(cfg.r_inner, cfg.r_outer, cfg.degree,
                                      cfg.elements);
        }
        throw InputError("unknown geometry kind");
    }();

    GradedMaterial material(cfg.ceramic, cfg.metal, cfg.exponent, cfg.scheme);

    std::optional<CrackModel> crack;
    if (cfg.crack)
        crack = CrackModel::on_patch(patch, cfg.crack->first, cfg.crack->second);

    EnrichmentPlan plan = crack ? classify(patch, *crack) : no_enrichment(patch);
    DofMap dofs(patch.num_control_points(), plan);

    const auto t0 = clock::now();
    AssembledSystem sys =
        assemble(patch, material, cfg.thickness, cfg.theory, dofs, plan,
                 crack ? &*crack : nullptr, cfg.quadrature);
    const auto t1 = clock::now();

    ConstraintSet cons = build_constraints(patch, dofs, cfg.boundary, sys);
    ReducedSystem red = reduce(sys, cons);
    ModalResult modal = solve_modal(red, cons, dofs, cfg.n_modes);
    if (cfg.mirror_both_parities) {
        BoundarySpec anti = cfg.boundary;
        for (auto& e : anti.edge)
            if (e == EdgeCondition::Symmetry) e = EdgeCondition::AntiSymmetry;
        const ConstraintSet cons_a = build_constraints(patch, dofs, anti, sys);
        const ReducedSystem red_a = reduce(sys, cons_a);
        const ModalResult other = solve_modal(red_a, cons_a, dofs, cfg.n_modes);

        // Merge the two parity spectra and keep the lowest n_modes.
        std::vector<std::pair<double, int>> order; // omega, source (+k / -k-1)
        for (size_t k = 0; k < modal.omega.size(); ++k)
            order.emplace_back(modal.omega[k], static_cast<int>(k));
        for (size_t k = 0; k < other.omega.size(); ++k)
            order.emplace_back(other.omega[k], -static_cast<int>(k) - 1);
        std::sort(order.begin(), order.end());
        const int keep =
            std::min<int>(cfg.n_modes, static_cast<int>(order.size()));
        ModalResult merged;
        merged.n_rigid_excluded =
            modal.n_rigid_excluded + other.n_rigid_excluded;
        merged.shapes.resize(modal.shapes.rows(), keep);
        for (int k = 0; k < keep; ++k) {
            merged.omega.push_back(order[k].first);
            const int src = order[k].second;
            if (src >= 0)
                merged.shapes.col(k) = modal.shapes.col(src);
            else
                merged.shapes.col(k) = other.shapes.col(-src - 1);
        }
        modal = std::move(merged);
    }
    const auto t2 = clock::now();

    CaseRun run{cfg,
                std::move(patch),
                std::move(plan),
                std::move(crack),
                std::move(dofs),
                std::move(cons),
                std::move(modal),
                {},
                normalization_name(cfg.normalization),
                std::chrono::duration<double>(t1 - t0).count(),
                std::chrono::duration<double>(t2 - t1).count()};
    const NormalizationInput nin = cfg.normalization_input();
    for (double om : run.modal.omega)
        run.normalized.push_back(normalize_frequency(om, cfg.normalization, nin));
    return run;
}

std::string frequencies_csv(const CaseRun& run) {
    std::ostringstream os;
    os.precision(12);
    os << "mode,omega_rad_s,normalized,convention\n";
    for (size_t k = 0; k < run.modal.omega.size(); ++k)
        os << k + 1 << ',' << run.modal.omega[k] << ',' << run.normalized[k]
           << ',' << run.convention << '\n';
    return os.str();
}

ReferenceTable ReferenceTable::from_file(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw InputError(fmt::format("cannot open reference table '{}'", path));
    json j;
    try {
        is >> j;
    } catch (const json::exception& e) {
        throw InputError(fmt::format("reference table '{}' is not valid JSON: {}",
                                     path, e.what()));
    }
    ReferenceTable t;
    t.label = optional_or<std::string>(j, "label", path);
    t.default_tolerance = optional_or<double>(j, "default_tolerance", 0.01);
    if (!j.contains("entries") || !j.at("entries").is_array())
        throw InputError("reference table: missing 'entries' array");
    for (const auto& e : j.at("entries")) {
        ReferenceEntry r;
        r.case_name = require<std::string>(e, "case");
        r.mode = require<int>(e, "mode");
        r.value = require<double>(e, "value");
        r.tolerance = optional_or<double>(e, "tolerance", t.default_tolerance);
        t.entries.push_back(r);
    }
    return t;
}

} // namespace xiga
