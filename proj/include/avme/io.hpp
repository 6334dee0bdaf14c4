#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "avme/certify.hpp"
#include "avme/combinat.hpp"
#include "avme/instances.hpp"
#include "avme/matrix.hpp"
#include "avme/solve.hpp"

namespace avme::io {

using nlohmann::json;

// ---------------------------------------------------------------------------
// JSON instance bundles
//
// { "type": "gave" | "gavme" | "ngavme" | "sylvester",
//   "A": [[...], ...], "B": ..., ("C", "K", "L": ...), ("F": ..., "f": [...]) }
// ---------------------------------------------------------------------------

inline json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline json vector_to_json(const Vector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
    return out;
}

inline Matrix matrix_from_json(const json& j, const std::string& name) {
    if (!j.is_array() || j.empty() || !j[0].is_array()) {
        throw ParseError(name + ": expected an array of row arrays");
    }
    const Eigen::Index rows = static_cast<Eigen::Index>(j.size());
    const Eigen::Index cols = static_cast<Eigen::Index>(j[0].size());
    if (cols == 0) throw ParseError(name + ": empty row");
    Matrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        if (!j[i].is_array() || static_cast<Eigen::Index>(j[i].size()) != cols) {
            throw ParseError(name + ": ragged rows");
        }
        for (Eigen::Index c = 0; c < cols; ++c) {
            if (!j[i][c].is_number()) throw ParseError(name + ": non-numeric entry");
            m(i, c) = j[i][c].get<double>();
        }
    }
    ensure_finite(m, name);
    return m;
}

inline Vector vector_from_json(const json& j, const std::string& name) {
    if (!j.is_array() || j.empty()) throw ParseError(name + ": expected a nonempty array");
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (!j[i].is_number()) throw ParseError(name + ": non-numeric entry");
        v(i) = j[i].get<double>();
    }
    ensure_finite(v, name);
    return v;
}

inline Instance instance_from_json(const json& j) {
    if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
        throw ParseError("instance bundle: missing \"type\"");
    }
    const std::string type = j["type"].get<std::string>();
    auto mat = [&](const char* key) { return matrix_from_json(j.at(key), key); };
    auto opt_mat = [&](const char* key) -> std::optional<Matrix> {
        if (!j.contains(key)) return std::nullopt;
        return matrix_from_json(j.at(key), key);
    };

    Instance inst = [&]() -> Instance {
        if (type == "gave") {
            std::optional<Vector> f;
            if (j.contains("f")) f = vector_from_json(j.at("f"), "f");
            return GaveInstance{mat("A"), mat("B"), std::move(f)};
        }
        if (type == "gavme") return GavmeInstance{mat("A"), mat("B"), opt_mat("F")};
        if (type == "ngavme") return NgavmeInstance{mat("A"), mat("B"), mat("C"), opt_mat("F")};
        if (type == "sylvester") {
            return SylvesterAveInstance{mat("A"), mat("B"), mat("K"), mat("L"), opt_mat("F")};
        }
        throw ParseError("instance bundle: unknown type \"" + type + "\"");
    }();
    validate(inst);
    return inst;
}

inline json instance_to_json(const Instance& inst) {
    json j;
    j["type"] = tag_name(tag_of(inst));
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            j["A"] = matrix_to_json(p.A);
            j["B"] = matrix_to_json(p.B);
            if constexpr (std::is_same_v<T, GaveInstance>) {
                if (p.f) j["f"] = vector_to_json(*p.f);
            } else if constexpr (std::is_same_v<T, NgavmeInstance>) {
                j["C"] = matrix_to_json(p.C);
                if (p.F) j["F"] = matrix_to_json(*p.F);
            } else if constexpr (std::is_same_v<T, SylvesterAveInstance>) {
                j["K"] = matrix_to_json(p.K);
                j["L"] = matrix_to_json(p.L);
                if (p.F) j["F"] = matrix_to_json(*p.F);
            } else {
                if (p.F) j["F"] = matrix_to_json(*p.F);
            }
        },
        inst);
    return j;
}

// ---------------------------------------------------------------------------
// MatrixMarket (array and coordinate formats, real general)
// ---------------------------------------------------------------------------

inline Matrix read_matrix_market(std::istream& in, const std::string& name) {
    std::string line;
    if (!std::getline(in, line)) throw ParseError(name + ": empty stream");
    std::istringstream header(line);
    std::string banner, object, format, field, symmetry;
    header >> banner >> object >> format >> field >> symmetry;
    if (banner != "%%MatrixMarket" || object != "matrix") {
        throw ParseError(name + ": missing MatrixMarket banner");
    }
    if (field != "real" && field != "integer" && field != "double") {
        throw ParseError(name + ": unsupported field \"" + field + "\"");
    }
    const bool coordinate = format == "coordinate";
    if (!coordinate && format != "array") {
        throw ParseError(name + ": unsupported format \"" + format + "\"");
    }
    const bool symmetric = symmetry == "symmetric";
    if (!symmetric && symmetry != "general") {
        throw ParseError(name + ": unsupported symmetry \"" + symmetry + "\"");
    }

    do {
        if (!std::getline(in, line)) throw ParseError(name + ": missing size line");
    } while (!line.empty() && line[0] == '%');

    std::istringstream size_line(line);
    Eigen::Index rows = 0, cols = 0;
    long long nnz = 0;
    size_line >> rows >> cols;
    if (coordinate) size_line >> nnz;
    if (size_line.fail() || rows < 1 || cols < 1) throw ParseError(name + ": bad size line");

    Matrix m = Matrix::Zero(rows, cols);
    if (coordinate) {
        for (long long k = 0; k < nnz; ++k) {
            Eigen::Index i = 0, j = 0;
            double v = 0.0;
            if (!(in >> i >> j >> v)) throw ParseError(name + ": truncated coordinate data");
            if (i < 1 || i > rows || j < 1 || j > cols) {
                throw ParseError(name + ": coordinate index out of range");
            }
            m(i - 1, j - 1) = v;
            if (symmetric) m(j - 1, i - 1) = v;
        }
    } else {
        // array format is column-major
        for (Eigen::Index j = 0; j < cols; ++j) {
            for (Eigen::Index i = symmetric ? j : 0; i < rows; ++i) {
                double v = 0.0;
                if (!(in >> v)) throw ParseError(name + ": truncated array data");
                m(i, j) = v;
                if (symmetric) m(j, i) = v;
            }
        }
    }
    ensure_finite(m, name);
    return m;
}

inline void write_matrix_market(std::ostream& out, const Matrix& m) {
    out << "%%MatrixMarket matrix array real general\n";
    out << m.rows() << " " << m.cols() << "\n";
    out.precision(17);
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) out << m(i, j) << "\n";
    }
}

/// Reads an instance from a directory of fixed-name .mtx files
/// (A.mtx, B.mtx, plus C.mtx / K.mtx+L.mtx / F.mtx / f.mtx); the class
/// is inferred from which files are present.
inline Instance instance_from_matrix_market_dir(const std::filesystem::path& dir) {
    namespace fs = std::filesystem;
    auto load = [&](const std::string& file) {
        std::ifstream in(dir / file);
        if (!in) throw ParseError((dir / file).string() + ": cannot open");
        return read_matrix_market(in, file);
    };
    auto exists = [&](const std::string& file) { return fs::exists(dir / file); };

    if (!exists("A.mtx") || !exists("B.mtx")) {
        throw ParseError(dir.string() + ": A.mtx and B.mtx are required");
    }
    Matrix A = load("A.mtx"), B = load("B.mtx");

    Instance inst = [&]() -> Instance {
        if (exists("K.mtx") && exists("L.mtx")) {
            std::optional<Matrix> F;
            if (exists("F.mtx")) F = load("F.mtx");
            return SylvesterAveInstance{std::move(A), std::move(B), load("K.mtx"), load("L.mtx"),
                                        std::move(F)};
        }
        if (exists("C.mtx")) {
            std::optional<Matrix> F;
            if (exists("F.mtx")) F = load("F.mtx");
            return NgavmeInstance{std::move(A), std::move(B), load("C.mtx"), std::move(F)};
        }
        if (exists("f.mtx")) {
            const Matrix fm = load("f.mtx");
            if (fm.cols() != 1) throw ParseError("f.mtx: expected a single column");
            return GaveInstance{std::move(A), std::move(B), Vector(fm.col(0))};
        }
        std::optional<Matrix> F;
        if (exists("F.mtx")) F = load("F.mtx");
        return GavmeInstance{std::move(A), std::move(B), std::move(F)};
    }();
    validate(inst);
    return inst;
}

inline void write_instance_matrix_market_dir(const std::filesystem::path& dir,
                                             const Instance& inst) {
    std::filesystem::create_directories(dir);
    auto dump = [&](const std::string& file, const Matrix& m) {
        std::ofstream out(dir / file);
        write_matrix_market(out, m);
    };
    std::visit(
        [&](const auto& p) {
            using T = std::decay_t<decltype(p)>;
            dump("A.mtx", p.A);
            dump("B.mtx", p.B);
            if constexpr (std::is_same_v<T, GaveInstance>) {
                if (p.f) dump("f.mtx", Matrix(*p.f));
            } else if constexpr (std::is_same_v<T, NgavmeInstance>) {
                dump("C.mtx", p.C);
                if (p.F) dump("F.mtx", *p.F);
            } else if constexpr (std::is_same_v<T, SylvesterAveInstance>) {
                dump("K.mtx", p.K);
                dump("L.mtx", p.L);
                if (p.F) dump("F.mtx", *p.F);
            } else {
                if (p.F) dump("F.mtx", *p.F);
            }
        },
        inst);
}

enum class Format { JSON, MatrixMarket };

/// Loads an instance from a JSON bundle file or a MatrixMarket directory.
inline Instance load_instance(const std::filesystem::path& path, Format fmt) {
    if (fmt == Format::MatrixMarket) return instance_from_matrix_market_dir(path);
    std::ifstream in(path);
    if (!in) throw ParseError(path.string() + ": cannot open");
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
    return instance_from_json(j);
}

// ---------------------------------------------------------------------------
// Report serialization
// ---------------------------------------------------------------------------

inline json certificate_to_json(const Certificate& c) {
    json j;
    j["condition_id"] = c.condition_id;
    j["verdict"] = verdict_name(c.verdict);
    j["witnesses"] = c.witnesses;
    j["margin"] = c.margin;
    j["notes"] = c.notes;
    return j;
}

inline json report_to_json(const CombinatorialReport& r) {
    json j;
    j["property_id"] = r.property_id;
    j["holds"] = r.holds;
    j["scanned"] = r.scanned;
    if (r.counterexample_selector) {
        json sel = json::array();
        for (bool b : *r.counterexample_selector) sel.push_back(b);
        j["counterexample_selector"] = sel;
    }
    if (r.counterexample_indices) j["counterexample_indices"] = *r.counterexample_indices;
    if (r.determinant_or_minor) j["determinant_or_minor"] = *r.determinant_or_minor;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

inline json solve_result_to_json(const SolveResult& r) {
    json j;
    j["solution"] = matrix_to_json(r.solution);
    j["iterations"] = r.iterations;
    j["final_residual"] = r.final_residual;
    j["converged"] = r.converged;
    if (!r.certificate_used.empty()) j["certificate_used"] = r.certificate_used;
    return j;
}

inline json oracle_report_to_json(const OracleReport& r) {
    json j;
    if (r.infinite) {
        j["solution_count"] = "INFINITE";
    } else {
        j["solution_count"] = r.solution_count();
    }
    json sols = json::array();
    for (const auto& s : r.solutions) sols.push_back(vector_to_json(s));
    j["solutions"] = sols;
    json pats = json::array();
    for (const auto& p : r.degenerate_patterns) pats.push_back(p);
    j["degenerate_patterns"] = pats;
    j["consistent_singular"] = r.consistent_singular;
    return j;
}

}  // namespace avme::io
