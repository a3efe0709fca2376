#include "cyclolines/json_io.hpp"

#include <numeric>
#include <stdexcept>

namespace cyclolines {

Json cyclotomic_to_json(const Cyclotomic& x) {
    Json coeffs = Json::array();
    for (const Rational& c : x.coeffs()) {
        coeffs.push_back(Json::array({to_int64(c.get_num()), to_int64(c.get_den())}));
    }
    return Json{{"order", x.order()}, {"coeffs", std::move(coeffs)}};
}

Cyclotomic cyclotomic_from_json(const Json& j) {
    int order = j.at("order").get<int>();
    const Json& coeffs = j.at("coeffs");
    if (order < 1) throw std::invalid_argument("cyclotomic JSON: bad order");
    if (static_cast<int>(coeffs.size()) != euler_phi(order))
        throw std::invalid_argument("cyclotomic JSON: expected phi(order) coefficients");
    Cyclotomic acc(0);
    int k = 0;
    for (const Json& pair : coeffs) {
        std::int64_t num = pair.at(0).get<std::int64_t>();
        std::int64_t den = pair.at(1).get<std::int64_t>();
        if (den <= 0) throw std::invalid_argument("cyclotomic JSON: denominator must be positive");
        if (num != 0) {
            Rational c(static_cast<long>(num), static_cast<long>(den));
            c.canonicalize();
            acc += Cyclotomic(c) * Cyclotomic::root_of_unity(order, k);
        }
        ++k;
    }
    return acc.to_order(order);
}

namespace {

Json complex_to_json(const std::complex<double>& z) {
    return Json::array({z.real(), z.imag()});
}

std::complex<double> complex_from_json(const Json& j) {
    return {j.at(0).get<double>(), j.at(1).get<double>()};
}

}  // namespace

Json lineset_to_json(const LineSet& ls) {
    Json out;
    out["dim"] = ls.dim();
    out["backend"] = backend_name(ls.backend);
    Json vectors = Json::array();
    if (ls.is_exact()) {
        out["cyclotomic_order"] = ls.cyclotomic_order();
        const auto& F = ls.exact_family();
        for (Eigen::Index j = 0; j < F.vectors.cols(); ++j) {
            Json vec = Json::array();
            for (Eigen::Index r = 0; r < F.vectors.rows(); ++r)
                vec.push_back(cyclotomic_to_json(F.vectors(r, j)));
            vectors.push_back(std::move(vec));
        }
    } else {
        out["cyclotomic_order"] = nullptr;
        const auto& F = ls.float_family();
        for (Eigen::Index j = 0; j < F.vectors.cols(); ++j) {
            Json vec = Json::array();
            for (Eigen::Index r = 0; r < F.vectors.rows(); ++r)
                vec.push_back(complex_to_json(F.vectors(r, j)));
            vectors.push_back(std::move(vec));
        }
    }
    out["vectors"] = std::move(vectors);
    if (ls.partition())
        out["partition"] = *ls.partition();
    else
        out["partition"] = nullptr;
    out["meta"] = ls.meta();
    return out;
}

LineSet lineset_from_json(const Json& j, double tolerance) {
    const Eigen::Index dim = j.at("dim").get<Eigen::Index>();
    const std::string backend = j.at("backend").get<std::string>();
    const Json& vectors = j.at("vectors");
    if (vectors.empty()) throw std::invalid_argument("lineset JSON: no vectors");
    std::optional<Partition> partition;
    if (j.contains("partition") && !j.at("partition").is_null())
        partition = j.at("partition").get<Partition>();
    std::string meta = j.value("meta", std::string{});

    if (backend == "exact") {
        CycMatrix cols(dim, static_cast<Eigen::Index>(vectors.size()));
        Eigen::Index col = 0;
        for (const Json& vec : vectors) {
            if (static_cast<Eigen::Index>(vec.size()) != dim)
                throw std::invalid_argument("lineset JSON: vector length differs from dim");
            for (Eigen::Index r = 0; r < dim; ++r) cols(r, col) = cyclotomic_from_json(vec.at(static_cast<std::size_t>(r)));
            ++col;
        }
        return LineSet::exact(std::move(cols), std::move(partition), std::move(meta));
    }
    if (backend != "float") throw std::invalid_argument("lineset JSON: unknown backend " + backend);
    CplxMatrix cols(dim, static_cast<Eigen::Index>(vectors.size()));
    Eigen::Index col = 0;
    for (const Json& vec : vectors) {
        if (static_cast<Eigen::Index>(vec.size()) != dim)
            throw std::invalid_argument("lineset JSON: vector length differs from dim");
        for (Eigen::Index r = 0; r < dim; ++r) cols(r, col) = complex_from_json(vec.at(static_cast<std::size_t>(r)));
        ++col;
    }
    return LineSet::floating(std::move(cols), std::move(partition), std::move(meta), tolerance);
}

namespace {

const char* tri_name(TypeIIMatrix::Tri t) {
    switch (t) {
        case TypeIIMatrix::Tri::Yes: return "yes";
        case TypeIIMatrix::Tri::No: return "no";
        default: return "unknown";
    }
}

}  // namespace

Json matrix_to_json(const TypeIIMatrix& m) {
    Json out;
    out["kind"] = "matrix";
    out["order"] = m.order();
    out["backend"] = backend_name(m.backend);
    Json rows = Json::array();
    if (m.backend.is_exact()) {
        const CycMatrix& M = m.exact();
        int order = 1;
        for (Eigen::Index r = 0; r < M.rows(); ++r)
            for (Eigen::Index c = 0; c < M.cols(); ++c)
                order = static_cast<int>(std::lcm<std::int64_t>(order, M(r, c).order()));
        out["cyclotomic_order"] = order;
        for (Eigen::Index r = 0; r < M.rows(); ++r) {
            Json row = Json::array();
            for (Eigen::Index c = 0; c < M.cols(); ++c)
                row.push_back(cyclotomic_to_json(M(r, c).to_order(order)));
            rows.push_back(std::move(row));
        }
    } else {
        out["cyclotomic_order"] = nullptr;
        const CplxMatrix& M = m.floating();
        for (Eigen::Index r = 0; r < M.rows(); ++r) {
            Json row = Json::array();
            for (Eigen::Index c = 0; c < M.cols(); ++c) row.push_back(complex_to_json(M(r, c)));
            rows.push_back(std::move(row));
        }
    }
    out["entries"] = std::move(rows);
    out["flags"] = Json{{"type_ii", m.type_ii},
                        {"flat", m.flat},
                        {"unitary_up_to_scale", m.unitary_up_to_scale},
                        {"spin_model", tri_name(m.spin_model)}};
    out["meta"] = m.meta;
    return out;
}

TypeIIMatrix matrix_from_json(const Json& j, double tolerance) {
    const std::string backend = j.at("backend").get<std::string>();
    const Json& rows = j.at("entries");
    const Eigen::Index v = static_cast<Eigen::Index>(rows.size());
    std::string meta = j.value("meta", std::string{});
    if (backend == "exact") {
        CycMatrix M(v, v);
        for (Eigen::Index r = 0; r < v; ++r) {
            const Json& row = rows.at(static_cast<std::size_t>(r));
            if (static_cast<Eigen::Index>(row.size()) != v)
                throw std::invalid_argument("matrix JSON: not square");
            for (Eigen::Index c = 0; c < v; ++c) M(r, c) = cyclotomic_from_json(row.at(static_cast<std::size_t>(c)));
        }
        return TypeIIMatrix::wrap(std::move(M), std::move(meta));
    }
    if (backend != "float") throw std::invalid_argument("matrix JSON: unknown backend " + backend);
    CplxMatrix M(v, v);
    for (Eigen::Index r = 0; r < v; ++r) {
        const Json& row = rows.at(static_cast<std::size_t>(r));
        if (static_cast<Eigen::Index>(row.size()) != v) throw std::invalid_argument("matrix JSON: not square");
        for (Eigen::Index c = 0; c < v; ++c) M(r, c) = complex_from_json(row.at(static_cast<std::size_t>(c)));
    }
    return TypeIIMatrix::wrap(std::move(M), std::move(meta), tolerance);
}

CycMatrix cyc_matrix_from_json(const Json& j) {
    const Json& rows = j.contains("entries") ? j.at("entries") : j;
    const Eigen::Index v = static_cast<Eigen::Index>(rows.size());
    CycMatrix M(v, static_cast<Eigen::Index>(rows.at(0).size()));
    for (Eigen::Index r = 0; r < v; ++r) {
        const Json& row = rows.at(static_cast<std::size_t>(r));
        for (Eigen::Index c = 0; c < static_cast<Eigen::Index>(row.size()); ++c)
            M(r, c) = cyclotomic_from_json(row.at(static_cast<std::size_t>(c)));
    }
    return M;
}

namespace {

Json group_to_json(const AbelianGroup& G) {
    Json g;
    g["order"] = G.order();
    g["describe"] = G.describe();
    if (const auto* pg = dynamic_cast<const ProductGroup*>(&G)) g["moduli"] = pg->moduli();
    return g;
}

}  // namespace

Json ds_certificate_to_json(const AbelianGroup& G, const std::vector<int>& D,
                            const DifferenceSetCheck& check) {
    return Json{{"group", group_to_json(G)},
                {"subset", D},
                {"params", Json::array({check.v, check.k, check.lambda})},
                {"kind", "ds"},
                {"verified", check.ok}};
}

Json rds_certificate_to_json(const AbelianGroup& G, const std::vector<int>& N,
                             const std::vector<int>& D, const RelativeDifferenceSetCheck& check) {
    return Json{{"group", group_to_json(G)},
                {"forbidden", N},
                {"subset", D},
                {"params", Json::array({check.m, check.n, check.k, check.lambda})},
                {"kind", "rds"},
                {"semiregular", check.semiregular},
                {"verified", check.ok}};
}

Json equiangular_report_to_json(const EquiangularReport& rep) {
    Json out;
    out["check"] = "equiangular";
    out["ok"] = rep.ok;
    if (rep.ok) {
        out["alpha"] = rep.alpha_text;
        if (rep.alpha)
            out["alpha_fraction"] = Json::array({to_int64(rep.alpha->get_num()), to_int64(rep.alpha->get_den())});
        out["alpha_float"] = rep.alpha_float;
    } else {
        out["message"] = rep.message;
        if (rep.witness) out["witness"] = Json::array({rep.witness->first, rep.witness->second});
    }
    return out;
}

Json mub_report_to_json(const MubReport& rep) {
    Json out;
    out["check"] = "mub";
    out["ok"] = rep.ok;
    out["bases"] = rep.bases;
    out["dim"] = rep.dim;
    if (!rep.ok) {
        out["message"] = rep.message;
        if (rep.witness) out["witness"] = Json::array({rep.witness->first, rep.witness->second});
    }
    return out;
}

Json fiducial_report_to_json(const FiducialDiagnostics& diag) {
    Json out;
    out["check"] = "fiducial-diagnostics";
    out["d"] = diag.d;
    out["exact"] = diag.exact;
    out["alpha"] = diag.alpha;
    if (!diag.alpha_exact.empty()) {
        Json fr = Json::array();
        for (const Rational& a : diag.alpha_exact)
            fr.push_back(Json::array({to_int64(a.get_num()), to_int64(a.get_den())}));
        out["alpha_fractions"] = std::move(fr);
    }
    out["l"] = diag.l;
    Json parity = Json::array();
    for (bool b : diag.l_odd) parity.push_back(b ? "odd" : "not-odd-integer");
    out["l_parity"] = std::move(parity);
    out["all_odd"] = diag.all_odd;
    out["message"] = diag.message;
    return out;
}

Json spin_report_to_json(const TypeIICheck& t2, const SpinCheck& spin) {
    Json out;
    out["check"] = "spin";
    out["type_ii"] = t2.ok;
    if (!t2.ok) out["type_ii_message"] = t2.message;
    out["spin_model"] = spin.ok;
    if (!spin.ok) {
        out["message"] = spin.message;
        if (spin.i >= 0) out["witness"] = Json::array({spin.i, spin.j});
    }
    out["ok"] = t2.ok && spin.ok;
    return out;
}

Json spin_duality_report_to_json(const SpinDualityReport& rep) {
    Json out;
    out["check"] = "spin-duality";
    out["ok"] = rep.ok;
    out["identity_ok"] = rep.identity_ok;
    out["diagonal_constant"] = rep.diagonal_constant;
    out["trace_constant"] = rep.trace_constant;
    out["colsum_constant"] = rep.colsum_constant;
    if (!rep.ok) {
        out["message"] = rep.message;
        if (rep.witness_j >= 0) out["witness_j"] = rep.witness_j;
    }
    return out;
}

}  // namespace cyclolines
