#include "weyl_scope/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "weyl_scope/errors.hpp"

namespace weyl {

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::ConfigInvalid, what); }

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) invalid(std::string("missing field '") + key + "'");
    return j.at(key);
}

double number(const Json& j, const char* what) {
    if (!j.is_number()) invalid(std::string(what) + " must be a number");
    return j.get<double>();
}

Json poly_to_json(const PiecewisePoly& p) {
    Json coeffs = Json::array();
    for (const auto& piece : p.coeffs) {
        Json c = Json::array();
        for (cplx z : piece) c.push_back(complex_to_json(z));
        coeffs.push_back(c);
    }
    return Json::array({p.breaks, coeffs});
}

PiecewisePoly poly_from_json(const Json& j, const char* name) {
    // A bare number is a constant function.
    if (j.is_number() || (j.is_array() && j.size() == 2 && j[0].is_number())) {
        return PiecewisePoly::constant(complex_from_json(j));
    }
    if (!j.is_array() || j.size() != 2 || !j[0].is_array() || !j[1].is_array()) {
        invalid(std::string(name) + " must be [breakpoints, coefficients]");
    }
    PiecewisePoly p;
    p.breaks.clear();
    p.coeffs.clear();
    for (const auto& b : j[0]) p.breaks.push_back(number(b, "breakpoint"));
    for (const auto& piece : j[1]) {
        if (!piece.is_array()) invalid(std::string(name) + ": each piece needs a coefficient list");
        std::vector<cplx> c;
        for (const auto& z : piece) c.push_back(complex_from_json(z));
        p.coeffs.push_back(c);
    }
    try {
        p.validate();
    } catch (const Error& e) {
        invalid(std::string(name) + ": " + e.what());
    }
    return p;
}

}  // namespace

Json complex_to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

cplx complex_from_json(const Json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
        return {j[0].get<double>(), j[1].get<double>()};
    }
    invalid("complex value must be a number or [re, im]");
}

Json matrix_to_json(const CMatrix& a) {
    Json rows = Json::array();
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index k = 0; k < a.cols(); ++k) row.push_back(complex_to_json(a(i, k)));
        rows.push_back(row);
    }
    return rows;
}

CMatrix matrix_from_json(const Json& j) {
    if (!j.is_array()) invalid("matrix must be a list of rows");
    const auto rows = static_cast<Eigen::Index>(j.size());
    if (rows == 0) return CMatrix(0, 0);
    if (!j[0].is_array()) invalid("matrix rows must be lists");
    const auto cols = static_cast<Eigen::Index>(j[0].size());
    CMatrix a(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i) {
        const Json& row = j[i];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) invalid("ragged matrix rows");
        for (Eigen::Index k = 0; k < cols; ++k) a(i, k) = complex_from_json(row[k]);
    }
    return a;
}

Json triple_to_json(const FiniteTriple& tr) {
    Json j;
    j["schema"] = kTripleSchema;
    j["id"] = tr.id;
    j["n"] = tr.state_dim();
    j["T"] = matrix_to_json(tr.T);
    j["Ttilde"] = matrix_to_json(tr.Ttilde);
    j["E"] = matrix_to_json(tr.E);
    j["G1"] = matrix_to_json(tr.G1);
    j["G2"] = matrix_to_json(tr.G2);
    j["Gt1"] = matrix_to_json(tr.Gt1);
    j["Gt2"] = matrix_to_json(tr.Gt2);
    return j;
}

TriplePtr triple_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("schema") || j["schema"] != kTripleSchema) {
        invalid(std::string("triple file must carry schema \"") + kTripleSchema + "\"");
    }
    const Json& nj = field(j, "n");
    if (!nj.is_number_integer() || nj.get<long>() < 1) invalid("n must be a positive integer");
    const Eigen::Index n = nj.get<Eigen::Index>();
    auto load = [&](const char* key) {
        CMatrix a = matrix_from_json(field(j, key));
        if (a.rows() == 0) return CMatrix(0, n);
        if (a.cols() != n) invalid(std::string(key) + " must have n columns");
        return a;
    };
    const std::string id = j.contains("id") && j["id"].is_string() ? j["id"].get<std::string>() : "triple";
    const CMatrix t = load("T"), e = load("E");
    if (t.rows() != e.rows()) invalid("T and E must have the same number of rows");
    TriplePtr tr;
    try {
        tr = make_triple(t, e, load("G1"), load("G2"), load("Gt1"), load("Gt2"), id);
    } catch (const Error& err) {
        if (err.code() == ErrorCode::ConfigInvalid) throw;
        invalid(std::string("triple does not load: ") + err.what());
    }
    if (j.contains("Ttilde")) {
        // The stored Ttilde must agree with the one forced by the Green identity.
        const CMatrix stored = matrix_from_json(j["Ttilde"]);
        if (stored.rows() != tr->Ttilde.rows() || stored.cols() != tr->Ttilde.cols() ||
            max_abs(stored - tr->Ttilde) > 1e-10 * std::max(1.0, max_abs(tr->Ttilde))) {
            invalid("stored Ttilde violates the Green identity");
        }
    }
    return tr;
}

Json hl_model_to_json(const HLModel& m) {
    Json j;
    j["q"] = poly_to_json(m.q);
    j["u"] = poly_to_json(m.u);
    j["w"] = poly_to_json(m.w);
    j["alpha"] = m.alpha;
    j["beta"] = m.beta;
    return j;
}

HLModel hl_model_from_json(const Json& j) {
    HLModel m;
    m.q = j.contains("q") ? poly_from_json(j["q"], "q") : PiecewisePoly::constant(0.0);
    m.u = poly_from_json(field(j, "u"), "u");
    m.w = j.contains("w") ? poly_from_json(j["w"], "w") : PiecewisePoly::constant(0.0);
    if (j.contains("alpha")) m.alpha = number(j["alpha"], "alpha");
    if (j.contains("beta")) m.beta = number(j["beta"], "beta");
    try {
        m.validate();
    } catch (const Error& e) {
        invalid(e.what());
    }
    return m;
}

Json rational_to_json(const RationalH2& f) {
    Json poles = Json::array(), residues = Json::array(), orders = Json::array();
    for (const auto& t : f.terms) {
        poles.push_back(complex_to_json(t.pole));
        residues.push_back(complex_to_json(t.coeff));
        orders.push_back(t.order);
    }
    Json j;
    j["poles"] = poles;
    j["residues"] = residues;
    j["orders"] = orders;
    return j;
}

RationalH2 rational_from_json(const Json& j) {
    const Json& poles = field(j, "poles");
    const Json& residues = field(j, "residues");
    if (!poles.is_array() || !residues.is_array() || poles.size() != residues.size()) {
        invalid("poles and residues must be lists of equal length");
    }
    RationalH2 f;
    for (std::size_t k = 0; k < poles.size(); ++k) {
        int order = 1;
        if (j.contains("orders")) {
            const Json& o = j["orders"];
            if (!o.is_array() || o.size() != poles.size() || !o[k].is_number_integer() || o[k].get<int>() < 1) {
                invalid("orders must be positive integers, one per pole");
            }
            order = o[k].get<int>();
        }
        const cplx a = complex_from_json(poles[k]);
        if (a.imag() == 0.0) invalid("poles must be nonreal");
        f.terms.push_back({a, order, complex_from_json(residues[k])});
    }
    return normalized(f);
}

Json fr_model_to_json(const FriedrichsModel& m) {
    Json j;
    j["phi"] = rational_to_json(m.phi);
    j["psi"] = rational_to_json(m.psi);
    j["B"] = complex_to_json(m.B);
    return j;
}

FriedrichsModel fr_model_from_json(const Json& j) {
    FriedrichsModel m;
    m.phi = rational_from_json(field(j, "phi"));
    m.psi = rational_from_json(field(j, "psi"));
    if (j.contains("B")) m.B = complex_from_json(j["B"]);
    return m;
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) invalid("cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        invalid(path + ": " + e.what());
    }
}

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string to_csv(const std::vector<std::string>& header, const std::vector<std::vector<double>>& rows) {
    std::ostringstream out;
    for (std::size_t k = 0; k < header.size(); ++k) out << (k ? "," : "") << header[k];
    out << '\n';
    for (const auto& row : rows) {
        require(row.size() == header.size(), ErrorCode::DimensionMismatch, "CSV row width differs from header");
        for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << format_double(row[k]);
        out << '\n';
    }
    return out.str();
}

}  // namespace weyl
