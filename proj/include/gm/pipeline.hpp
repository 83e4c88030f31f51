#ifndef GM_PIPELINE_HPP
#define GM_PIPELINE_HPP

#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "gm/brieskorn.hpp"
#include "gm/connection.hpp"
#include "gm/errors.hpp"
#include "gm/local_basis.hpp"
#include "gm/parser.hpp"

namespace gm {

enum class Command { Milnor, Basis, TMatrix, Connection, Saturate, Spectrum, All };

inline std::optional<Command> command_from_string(std::string_view name) {
    if (name == "milnor") return Command::Milnor;
    if (name == "basis") return Command::Basis;
    if (name == "tmatrix") return Command::TMatrix;
    if (name == "connection") return Command::Connection;
    if (name == "saturate") return Command::Saturate;
    if (name == "spectrum") return Command::Spectrum;
    if (name == "all") return Command::All;
    return std::nullopt;
}

enum class OutputFormat { Json, Table };

struct RunConfig {
    long prec_s = 10;            // s-adic order of Brieskorn reductions
    long prec_t = 10;            // t-adic precision of connection data
    std::optional<int> prec_x;   // x-degree certification bound (default: max(10, 3 deg f))
    OutputFormat format = OutputFormat::Json;
    bool stability_check = true; // recompute at (D+5, N+5) and compare
};

/// One internal report; both output formats render from it.
struct Report {
    int mu = 0;
    std::vector<std::string> basis;
    std::optional<std::vector<Rational>> weights;
    std::optional<SeriesMatrix> t_matrix;
    std::optional<std::vector<std::string>> connection_labels;
    std::optional<SeriesMatrix> connection;
    std::optional<std::vector<Rational>> residues;
    std::optional<std::vector<Rational>> rotations;
    std::optional<RationalMatrix> a0;
    std::optional<RationalMatrix> a1;
    std::optional<bool> nilpotent_a0;
    std::string verdict;
    long prec_s = 0;
    long prec_t = 0;
    int prec_x = 0;
};

namespace detail {

inline Report compute_report(Command cmd, const MultiPoly& f, int bound, long prec_s,
                             long prec_t) {
    const ContextPtr ctx = make_context(f, bound);
    Report rep;
    rep.mu = ctx->report.mu;
    for (const auto& e : ctx->report.basis_monomials)
        rep.basis.push_back(monomial_string(ctx->report.vars, e));
    rep.prec_s = prec_s;
    rep.prec_t = prec_t;
    rep.prec_x = bound;
    rep.verdict = "isolated";
    if (cmd == Command::Milnor) return rep;

    rep.weights = ctx->report.weights;
    if (cmd == Command::Basis) return rep;

    const TMatrix t = t_matrix(ctx, prec_s);
    rep.t_matrix = t.matrix;
    if (cmd == Command::TMatrix) return rep;

    if (cmd == Command::Spectrum || (cmd == Command::All && !ctx->report.weights)) {
        const SpectralFirstOrder sp = spectral_first_order(t);
        rep.a0 = sp.a0;
        rep.a1 = sp.a1;
        rep.nilpotent_a0 = sp.a0_nilpotent;
        rep.verdict = "first_order_only";
        return rep;
    }

    // Quasi-homogeneous exact-connection path (Connection, Saturate, All).
    const FormalMeromorphicConnection conn = gm_connection_qh(ctx, prec_t);
    rep.connection = conn.matrix();
    rep.connection_labels = conn.basis_labels();
    const SaturationResult sat = saturate(conn, Lattice::standard(conn.dim(), prec_t));
    rep.verdict = to_string(sat.verdict);
    if (sat.verdict == Regularity::Regular) {
        const RationalMatrix res = residue(conn, sat.lattice);
        RationalRoots roots = rational_roots(char_poly(res));
        rep.residues = std::move(roots.roots);
        rep.rotations = monodromy_rotation_numbers(res).rotation_numbers;
    }
    return rep;
}

inline bool reports_agree(const Report& a, const Report& b) {
    if (a.mu != b.mu || a.basis != b.basis || a.weights != b.weights) return false;
    if (a.t_matrix.has_value() != b.t_matrix.has_value()) return false;
    if (a.t_matrix && *a.t_matrix != *b.t_matrix) return false;
    if (a.connection.has_value() != b.connection.has_value()) return false;
    if (a.connection && *a.connection != *b.connection) return false;
    return a.residues == b.residues && a.rotations == b.rotations && a.a0 == b.a0 &&
           a.a1 == b.a1 && a.nilpotent_a0 == b.nilpotent_a0 && a.verdict == b.verdict;
}

} // namespace detail

/// Execute a pipeline command. With the stability check on, every public
/// number is recomputed at (D+5, N+5) and any discrepancy raises
/// UnstableTruncation.
inline Report run(Command cmd, const MultiPoly& f, const RunConfig& cfg) {
    if (cfg.prec_s < 2 || cfg.prec_t < 2 || (cfg.prec_x && *cfg.prec_x < 2))
        throw Error("all precisions must be >= 2");
    const int bound = cfg.prec_x.value_or(default_degree_bound(f, cfg.prec_s));
    Report rep = detail::compute_report(cmd, f, bound, cfg.prec_s, cfg.prec_t);
    if (cfg.stability_check) {
        const Report wide =
            detail::compute_report(cmd, f, bound + 5, cfg.prec_s + 5, cfg.prec_t + 5);
        if (!detail::reports_agree(rep, wide))
            throw UnstableTruncation("public results changed when recomputed at (D+5, N+5)");
    }
    return rep;
}

namespace detail {

using json = nlohmann::ordered_json;

inline json series_to_json(const TruncatedSeries& s) {
    json coeffs = json::array();
    for (long k = s.valuation(); k < s.precision(); ++k) coeffs.push_back(to_string(s.coeff(k)));
    return json{{"valuation", s.valuation()}, {"coefficients", coeffs},
                {"precision", s.precision()}};
}

inline json series_matrix_to_json(const SeriesMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(series_to_json(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return json{{"variable", std::string(1, var_letter(m.var()))},
                {"rows", m.rows()},
                {"cols", m.cols()},
                {"entries", rows}};
}

inline json rational_matrix_to_json(const RationalMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(to_string(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

inline json rationals_to_json(const std::vector<Rational>& v) {
    json arr = json::array();
    for (const auto& r : v) arr.push_back(to_string(r));
    return arr;
}

} // namespace detail

/// JSON rendering. Schema-stable field names; rationals are "p/q" strings,
/// series are {valuation, coefficients, precision} objects.
inline std::string to_json(const Report& rep) {
    detail::json j;
    j["mu"] = rep.mu;
    j["basis"] = rep.basis;
    if (rep.weights) j["weights"] = detail::rationals_to_json(*rep.weights);
    if (rep.t_matrix) j["t_matrix"] = detail::series_matrix_to_json(*rep.t_matrix);
    if (rep.connection) {
        detail::json c = detail::series_matrix_to_json(*rep.connection);
        if (rep.connection_labels) c["basis_labels"] = *rep.connection_labels;
        j["connection"] = std::move(c);
    }
    if (rep.residues) j["residues"] = detail::rationals_to_json(*rep.residues);
    if (rep.rotations) j["rotations"] = detail::rationals_to_json(*rep.rotations);
    if (rep.a0) j["a0"] = detail::rational_matrix_to_json(*rep.a0);
    if (rep.a1) j["a1"] = detail::rational_matrix_to_json(*rep.a1);
    if (rep.nilpotent_a0) j["nilpotent_a0"] = *rep.nilpotent_a0;
    j["verdict"] = rep.verdict;
    j["precisions"] = detail::json{{"s", rep.prec_s}, {"x", rep.prec_x}, {"t", rep.prec_t}};
    return j.dump(2);
}

namespace detail {

inline void table_matrix(std::ostringstream& out, const SeriesMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out << "    [";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out << ",  ";
            out << m.at(i, j).str();
        }
        out << "]\n";
    }
}

inline void table_matrix(std::ostringstream& out, const RationalMatrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out << "    [";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out << ",  ";
            out << to_string(m.at(i, j));
        }
        out << "]\n";
    }
}

inline std::string join(const std::vector<std::string>& v) {
    std::string out;
    for (const auto& s : v) {
        if (!out.empty()) out += ", ";
        out += s;
    }
    return out;
}

inline std::string join(const std::vector<Rational>& v) {
    std::vector<std::string> s;
    s.reserve(v.size());
    for (const auto& r : v) s.push_back(to_string(r));
    return join(s);
}

} // namespace detail

/// Aligned-column table rendering of the same report.
inline std::string to_table(const Report& rep) {
    std::ostringstream out;
    out << "mu:          " << rep.mu << "\n";
    out << "basis:       " << detail::join(rep.basis) << "\n";
    if (rep.weights) out << "weights:     " << detail::join(*rep.weights) << "\n";
    if (rep.t_matrix) {
        out << "t_matrix:\n";
        detail::table_matrix(out, *rep.t_matrix);
    }
    if (rep.connection) {
        out << "connection:";
        if (rep.connection_labels) out << "  (basis: " << detail::join(*rep.connection_labels) << ")";
        out << "\n";
        detail::table_matrix(out, *rep.connection);
    }
    if (rep.residues) out << "residues:    " << detail::join(*rep.residues) << "\n";
    if (rep.rotations) out << "rotations:   " << detail::join(*rep.rotations) << "\n";
    if (rep.a0) {
        out << "a0:\n";
        detail::table_matrix(out, *rep.a0);
    }
    if (rep.a1) {
        out << "a1:\n";
        detail::table_matrix(out, *rep.a1);
    }
    if (rep.nilpotent_a0) out << "nilpotent_a0: " << (*rep.nilpotent_a0 ? "true" : "false") << "\n";
    out << "verdict:     " << rep.verdict << "\n";
    out << "precisions:  s=" << rep.prec_s << " x=" << rep.prec_x << " t=" << rep.prec_t << "\n";
    return out.str();
}

inline std::string render(const Report& rep, OutputFormat fmt) {
    return fmt == OutputFormat::Json ? to_json(rep) : to_table(rep);
}

} // namespace gm

#endif // GM_PIPELINE_HPP
