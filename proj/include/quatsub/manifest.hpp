#ifndef QUATSUB_MANIFEST_HPP
#define QUATSUB_MANIFEST_HPP

#include "quatsub/sampling.hpp"
#include "quatsub/structure.hpp"
#include "quatsub/submersion.hpp"
#include "quatsub/toml.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace quatsub {

struct ManifestError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class StructureKind { None, Canonical, Explicit };

struct Manifest {
    std::string name;
    std::string description;
    int total_dim = 0;
    int base_dim = 0;
    // empty grid means euclidean
    std::vector<std::vector<std::string>> total_metric;
    std::vector<std::vector<std::string>> base_metric;
    std::vector<Interval> box;
    std::vector<std::string> map_components;
    StructureKind structure = StructureKind::None;
    std::vector<std::vector<std::string>> I, J, K;  // Explicit only
    SamplePlan samples;
};

struct LoadedFixture {
    Manifest manifest;
    SubmersionFixture fix;
    std::optional<StructureTriple> triple;
    std::vector<VectorXd> points;
    std::uint64_t digest = 0;
};

inline std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

namespace detail {

inline std::vector<std::vector<std::string>> read_grid(const toml::Value& v, int dim,
                                                       const std::string& what) {
    if (v.is_string()) {
        if (v.str() == "euclidean") return {};
        throw ManifestError(what + ": unknown metric keyword '" + v.str() + "'");
    }
    if (!v.is_array()) throw ManifestError(what + ": expected \"euclidean\" or a grid");
    std::vector<std::vector<std::string>> grid;
    for (const auto& row : v.array()) {
        if (!row.is_array()) throw ManifestError(what + ": grid rows must be arrays");
        std::vector<std::string> r;
        for (const auto& cell : row.array()) {
            if (cell.is_string()) r.push_back(cell.str());
            else if (cell.is_int() || cell.is_float()) r.push_back(std::to_string(cell.number()));
            else throw ManifestError(what + ": grid cells must be strings or numbers");
        }
        grid.push_back(std::move(r));
    }
    if (static_cast<int>(grid.size()) != dim)
        throw ManifestError(what + ": grid must be " + std::to_string(dim) + "x" +
                            std::to_string(dim));
    for (const auto& r : grid)
        if (static_cast<int>(r.size()) != dim)
            throw ManifestError(what + ": grid must be square");
    return grid;
}

inline MetricField build_metric(const std::vector<std::vector<std::string>>& grid, int dim,
                                const std::string& what) {
    if (grid.empty()) return MetricField::euclidean(dim);
    std::vector<std::vector<ExprPtr>> e(dim, std::vector<ExprPtr>(dim));
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            try {
                e[i][j] = parse_expr(grid[i][j], dim);
            } catch (const ParseError& ex) {
                throw ManifestError(what + "[" + std::to_string(i + 1) + "][" +
                                    std::to_string(j + 1) + "]: " + ex.what());
            }
        }
    return MetricField(dim, std::move(e));
}

inline MatrixField build_matrix(const std::vector<std::vector<std::string>>& grid, int dim,
                                const std::string& what) {
    std::vector<std::vector<ExprPtr>> e(dim, std::vector<ExprPtr>(dim));
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
            try {
                e[i][j] = parse_expr(grid.at(i).at(j), dim);
            } catch (const ParseError& ex) {
                throw ManifestError(what + "[" + std::to_string(i + 1) + "][" +
                                    std::to_string(j + 1) + "]: " + ex.what());
            } catch (const std::out_of_range&) {
                throw ManifestError(what + ": grid must be " + std::to_string(dim) + "x" +
                                    std::to_string(dim));
            }
        }
    return MatrixField(dim, std::move(e));
}

}  // namespace detail

inline Manifest parse_manifest(const std::string& source) {
    toml::Table root;
    try {
        root = toml::parse(source);
    } catch (const toml::TomlError& e) {
        throw ManifestError(e.what());
    }
    toml::Value doc(root);
    Manifest m;
    if (doc.contains("name")) m.name = doc.at("name").str();
    if (doc.contains("description")) m.description = doc.at("description").str();

    if (!doc.contains("total")) throw ManifestError("missing [total] table");
    const toml::Value& total = doc.at("total");
    m.total_dim = static_cast<int>(total.at("dim").integer());
    if (m.total_dim < 2) throw ManifestError("total.dim must be >= 2");
    if (total.contains("metric"))
        m.total_metric = detail::read_grid(total.at("metric"), m.total_dim, "total.metric");
    if (!total.contains("box_lo") || !total.contains("box_hi"))
        throw ManifestError("total.box_lo and total.box_hi are required");
    const auto& lo = total.at("box_lo").array();
    const auto& hi = total.at("box_hi").array();
    if (static_cast<int>(lo.size()) != m.total_dim || static_cast<int>(hi.size()) != m.total_dim)
        throw ManifestError("box bounds must have total.dim entries");
    for (int i = 0; i < m.total_dim; ++i) {
        double a = lo[i].number(), b = hi[i].number();
        if (!(a < b)) throw ManifestError("box_lo must be strictly below box_hi");
        m.box.emplace_back(a, b);
    }

    if (!doc.contains("base")) throw ManifestError("missing [base] table");
    const toml::Value& base = doc.at("base");
    m.base_dim = static_cast<int>(base.at("dim").integer());
    if (m.base_dim < 1 || m.base_dim >= m.total_dim)
        throw ManifestError("base.dim must satisfy 1 <= base.dim < total.dim");
    if (base.contains("metric"))
        m.base_metric = detail::read_grid(base.at("metric"), m.base_dim, "base.metric");

    if (!doc.contains("map")) throw ManifestError("missing [map] table");
    const toml::Value& mp = doc.at("map");
    if (!mp.contains("components")) throw ManifestError("map.components is required");
    for (const auto& c : mp.at("components").array()) m.map_components.push_back(c.str());
    if (static_cast<int>(m.map_components.size()) != m.base_dim)
        throw ManifestError("map.components must have base.dim entries");

    if (doc.contains("structure")) {
        const toml::Value& st = doc.at("structure");
        std::string kind = st.contains("kind") ? st.at("kind").str() : "canonical";
        if (kind == "none") {
            m.structure = StructureKind::None;
        } else if (kind == "canonical") {
            m.structure = StructureKind::Canonical;
        } else if (kind == "explicit") {
            m.structure = StructureKind::Explicit;
            for (const char* r : {"I", "J", "K"}) {
                if (!st.contains(r))
                    throw ManifestError(std::string("structure.") + r +
                                        " is required for kind = \"explicit\"");
            }
            m.I = detail::read_grid(st.at("I"), m.total_dim, "structure.I");
            m.J = detail::read_grid(st.at("J"), m.total_dim, "structure.J");
            m.K = detail::read_grid(st.at("K"), m.total_dim, "structure.K");
        } else {
            throw ManifestError("structure.kind must be none, canonical, or explicit");
        }
        if (m.structure != StructureKind::None && m.total_dim % 4 != 0)
            throw ManifestError("dimension not divisible by 4");
    }

    if (doc.contains("samples")) {
        const toml::Value& sm = doc.at("samples");
        if (sm.contains("mode")) {
            const std::string& mode = sm.at("mode").str();
            if (mode == "grid") m.samples.mode = SampleMode::Grid;
            else if (mode == "lowdiscrepancy") m.samples.mode = SampleMode::LowDiscrepancy;
            else if (mode == "explicit") m.samples.mode = SampleMode::Explicit;
            else throw ManifestError("samples.mode must be grid, lowdiscrepancy, or explicit");
        }
        if (sm.contains("count")) m.samples.count = static_cast<int>(sm.at("count").integer());
        if (sm.contains("seed"))
            m.samples.seed = static_cast<std::uint64_t>(sm.at("seed").integer());
        if (sm.contains("points")) {
            for (const auto& row : sm.at("points").array()) {
                VectorXd p(m.total_dim);
                if (static_cast<int>(row.array().size()) != m.total_dim)
                    throw ManifestError("samples.points entries must have total.dim coordinates");
                for (int i = 0; i < m.total_dim; ++i) p(i) = row.array()[i].number();
                m.samples.points.push_back(p);
            }
        }
        if (m.samples.mode == SampleMode::Explicit && m.samples.points.empty())
            throw ManifestError("samples.mode = explicit requires samples.points");
        if (m.samples.count < 1) throw ManifestError("samples.count must be >= 1");
    }
    return m;
}

inline LoadedFixture load_fixture(const std::string& source) {
    LoadedFixture lf;
    lf.manifest = parse_manifest(source);
    lf.digest = fnv1a(source);
    const Manifest& m = lf.manifest;
    lf.fix.name = m.name;
    lf.fix.total = detail::build_metric(m.total_metric, m.total_dim, "total.metric");
    lf.fix.base = detail::build_metric(m.base_metric, m.base_dim, "base.metric");
    std::string joined;
    for (std::size_t i = 0; i < m.map_components.size(); ++i) {
        if (i) joined += ", ";
        joined += m.map_components[i];
    }
    try {
        lf.fix.map = parse_map(joined, m.total_dim, m.box);
    } catch (const ParseError& e) {
        throw ManifestError(std::string("map.components: ") + e.what());
    }
    if (m.structure == StructureKind::Canonical) {
        lf.triple = canonical_structure(m.total_dim / 4);
    } else if (m.structure == StructureKind::Explicit) {
        StructureTriple t;
        t.dim = m.total_dim;
        t.I = detail::build_matrix(m.I, m.total_dim, "structure.I");
        t.J = detail::build_matrix(m.J, m.total_dim, "structure.J");
        t.K = detail::build_matrix(m.K, m.total_dim, "structure.K");
        lf.triple = std::move(t);
    }
    lf.points = sample_points(m.box, m.samples);
    return lf;
}

}  // namespace quatsub

#endif  // QUATSUB_MANIFEST_HPP
