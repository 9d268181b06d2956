#include "adhm/json_io.hpp"

#include <fstream>
#include <sstream>

namespace adhm {

namespace {

std::string rat_str(const mpq_class& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

mpq_class rat_parse(const std::string& s) {
    if (s.empty()) throw ParseError("empty rational literal");
    try {
        mpq_class q(s);
        q.canonicalize();
        return q;
    } catch (const std::exception&) {
        throw ParseError("bad rational literal: " + s);
    }
}

FieldKind field_from_string(const std::string& s) {
    if (s == "rational") return FieldKind::Rational;
    if (s == "gaussian_rational") return FieldKind::GaussianRational;
    if (s == "complex64") return FieldKind::Complex64;
    throw ParseError("unknown field: " + s);
}

}  // namespace

json scalar_to_json(const Scalar& s) {
    switch (s.field()) {
        case FieldKind::Rational:
            return rat_str(s.rat_re());
        case FieldKind::GaussianRational:
            return json::array({rat_str(s.rat_re()), rat_str(s.rat_im())});
        case FieldKind::Complex64:
            return json::array({s.cplx().real(), s.cplx().imag()});
    }
    throw ParseError("unreachable field kind");
}

Scalar scalar_from_json(const json& j, FieldKind f) {
    switch (f) {
        case FieldKind::Rational:
            if (j.is_string()) return Scalar::rational(rat_parse(j.get<std::string>()));
            if (j.is_number_integer()) return Scalar::rational(mpq_class(j.get<long>()));
            throw ParseError("rational entries must be strings like \"p/q\"");
        case FieldKind::GaussianRational: {
            if (j.is_string()) return Scalar::gaussian(rat_parse(j.get<std::string>()), 0);
            if (!j.is_array() || j.size() != 2 || !j[0].is_string() || !j[1].is_string())
                throw ParseError("gaussian entries must be [\"p/q\",\"p/q\"]");
            return Scalar::gaussian(rat_parse(j[0].get<std::string>()),
                                    rat_parse(j[1].get<std::string>()));
        }
        case FieldKind::Complex64: {
            if (j.is_number()) return Scalar::complex64(j.get<double>(), 0.0);
            if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
                throw ParseError("complex entries must be [re, im]");
            return Scalar::complex64(j[0].get<double>(), j[1].get<double>());
        }
    }
    throw ParseError("unreachable field kind");
}

json mat_to_json(const Mat& m) {
    json rows = json::array();
    for (int i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.cols(); ++j) row.push_back(scalar_to_json(m.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

Mat mat_from_json(const json& j, int rows, int cols, FieldKind f) {
    if (!j.is_array() || static_cast<int>(j.size()) != rows)
        throw ParseError("matrix: expected " + std::to_string(rows) + " rows");
    Mat m(rows, cols, f);
    for (int i = 0; i < rows; ++i) {
        const json& row = j[i];
        if (!row.is_array() || static_cast<int>(row.size()) != cols)
            throw ParseError("matrix row " + std::to_string(i) + ": expected " +
                             std::to_string(cols) + " entries");
        for (int c = 0; c < cols; ++c) m.at(i, c) = scalar_from_json(row[c], f);
    }
    return m;
}

json datum_to_json(const SymplecticDatum& d, const std::string& comment) {
    json j;
    j["schema_version"] = kSchemaVersion;
    if (!comment.empty()) j["comment"] = comment;
    j["field"] = field_name(d.field());
    j["n"] = d.n;
    j["r"] = d.r;
    j["A"] = mat_to_json(d.A);
    j["B"] = mat_to_json(d.B);
    j["I"] = mat_to_json(d.I);
    j["G"] = mat_to_json(d.G);
    // standard Darboux form round-trips as the keyword
    SymplecticForm std_form = SymplecticForm::standard(d.r, d.field());
    if (d.omega.matrix.equals(std_form.matrix))
        j["omega"] = "standard";
    else
        j["omega"] = mat_to_json(d.omega.matrix);
    return j;
}

SymplecticDatum datum_from_json(const json& j) {
    for (const char* key : {"field", "n", "r", "A", "B", "I", "G"})
        if (!j.contains(key)) throw ParseError(std::string("missing key: ") + key);
    FieldKind f = field_from_string(j["field"].get<std::string>());
    int n = j["n"].get<int>();
    int r = j["r"].get<int>();
    if (n < 0 || r <= 0 || r % 2 != 0) throw ParseError("need n >= 0 and even r >= 2");
    Mat A = mat_from_json(j["A"], n, n, f);
    Mat B = mat_from_json(j["B"], n, n, f);
    Mat I = mat_from_json(j["I"], n, r, f);
    Mat G = mat_from_json(j["G"], n, n, f);
    SymplecticForm omega = SymplecticForm::standard(r, f);
    if (j.contains("omega") && !j["omega"].is_string())
        omega = SymplecticForm::explicit_form(mat_from_json(j["omega"], r, r, f));
    return assemble_unchecked(n, r, A, B, I, G, omega);
}

SymplecticDatum load_datum(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw ParseError("json parse error in " + path + ": " + e.what());
    }
    return datum_from_json(j);
}

json classical_to_json(const ClassicalDatum& d) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["field"] = field_name(d.field());
    j["n"] = d.n;
    j["r"] = d.r;
    j["A"] = mat_to_json(d.A);
    j["B"] = mat_to_json(d.B);
    j["I"] = mat_to_json(d.I);
    j["J"] = mat_to_json(d.J);
    return j;
}

json validation_to_json(const ValidationReport& r) {
    json j;
    j["valid"] = r.ok;
    json eqs = json::array();
    for (const auto& e : r.equations) {
        json q;
        q["equation"] = e.name;
        q["ok"] = e.ok;
        q["residual"] = e.residual;
        eqs.push_back(q);
    }
    j["equations"] = eqs;
    return j;
}

json polymat_to_json(const PolyMat& p) {
    json coeffs = json::array();
    for (int i = 0; i <= p.degree(); ++i) coeffs.push_back(mat_to_json(p.coeff(i)));
    return coeffs;
}

json curve_to_json(const DeformationCurve& c) {
    json j;
    switch (c.kind) {
        case CurveCase::G_ZERO: j["case"] = "G_ZERO"; break;
        case CurveCase::CORANK_ONE: j["case"] = "CORANK_ONE"; break;
        case CurveCase::GENERAL: j["case"] = "GENERAL"; break;
        case CurveCase::CONSTANT: j["case"] = "CONSTANT"; break;
    }
    j["certified"] = c.flag == CertFlag::EXACT_CERTIFIED ? "exact" : "float";
    j["field"] = field_name(c.A_t.field());
    j["A_t"] = polymat_to_json(c.A_t);
    j["B_t"] = polymat_to_json(c.B_t);
    j["I_t"] = polymat_to_json(c.I_t);
    j["G_t"] = polymat_to_json(c.G_t);
    json gauges = json::array();
    for (const auto& g : c.gauge_log) gauges.push_back(mat_to_json(g.g));
    j["gauge_log"] = gauges;
    return j;
}

json certificate_to_json(const CurveCertificate& c) {
    json j;
    j["green"] = c.green();
    j["residuals_zero"] = c.residuals_zero;
    j["worst_residual"] = c.worst_residual;
    j["base_matches"] = c.base_matches;
    j["det_order"] = c.det_order;
    j["expected_order"] = c.expected_order;
    j["det_order_ok"] = c.det_order_ok;
    json ts = json::array();
    for (const auto& t : c.sampled_t) ts.push_back(scalar_to_json(t));
    j["stability_samples"] = ts;
    j["stable_at_samples"] = c.stable_at_samples;
    j["failures"] = c.failures;
    return j;
}

json uhlenbeck_to_json(const UhlenbeckPoint& p) {
    json j;
    j["charge"] = p.charge();
    j["regular"] = datum_to_json(p.regular);
    json cyc = json::array();
    for (const auto& [a, b] : p.cycle)
        cyc.push_back(json::array({scalar_to_json(a), scalar_to_json(b)}));
    j["cycle"] = cyc;
    j["cycle_length"] = p.cycle.size();
    j["weighted_normal_form"] = p.weighted;
    return j;
}

json tangent_to_json(const TangentReport& r) {
    json j;
    j["ambient_dim"] = r.ambient_dim;
    j["jac_rank"] = r.jac_rank;
    j["ker_dim"] = r.ker_dim;
    j["orbit_dim"] = r.orbit_dim;
    j["moduli_tangent_dim"] = r.moduli_tangent_dim;
    j["expected_dim"] = r.expected_dim;
    j["smooth"] = r.smooth;
    return j;
}

json fiber_to_json(const FiberReport& r) {
    json j;
    j["point"] = json::array(
        {scalar_to_json(r.point[0]), scalar_to_json(r.point[1]), scalar_to_json(r.point[2])});
    j["rank_alpha"] = r.rank_alpha;
    j["rank_beta"] = r.rank_beta;
    j["fiber_dim"] = r.fiber_dim;
    return j;
}

json lift_to_json(const SymplecticLift& l) {
    json j;
    j["ok"] = l.ok;
    json conds = json::array();
    for (const auto& c : l.conditions) {
        json q;
        q["condition"] = c.name;
        q["ok"] = c.ok;
        q["residual"] = c.residual;
        conds.push_back(q);
    }
    j["conditions"] = conds;
    j["square1_residual"] = l.square1_residual;
    j["square2_residual"] = l.square2_residual;
    return j;
}

std::string fnv1a_hex(const std::string& bytes) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

}  // namespace adhm
