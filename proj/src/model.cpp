#include "crquad/model.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>

namespace crquad {

QuadricModel::QuadricModel(std::size_t n, std::size_t d, std::vector<HermitianMatrix> forms)
    : n_(n), d_(d), forms_(std::move(forms)) {
    if (n_ == 0 || d_ == 0) throw ValidationError("model dimensions must be positive");
    if (forms_.size() != d_) {
        std::ostringstream os;
        os << "expected " << d_ << " matrices, got " << forms_.size();
        throw ValidationError(os.str());
    }
    for (std::size_t j = 0; j < d_; ++j) {
        if (forms_[j].size() != n_) {
            std::ostringstream os;
            os << "matrix " << j + 1 << " is " << forms_[j].size() << "x" << forms_[j].size()
               << ", expected " << n_ << "x" << n_;
            throw ValidationError(os.str());
        }
    }
}

std::vector<Rational> QuadricModel::levi(const GRVector& z) const {
    std::vector<Rational> out;
    out.reserve(d_);
    for (const auto& a : forms_) out.push_back(a.quadratic_form(z));
    return out;
}

GRVector QuadricModel::sesqui(const GRVector& x, const GRVector& y) const {
    GRVector out;
    out.reserve(d_);
    for (const auto& a : forms_) out.push_back(a.sesqui_form(x, y));
    return out;
}

MultiPoly QuadricModel::levi_poly(std::size_t j) const {
    VarEnv e = env();
    MultiPoly p(e);
    const HermitianMatrix& a = forms_.at(j);
    for (std::size_t k = 0; k < n_; ++k) {
        for (std::size_t l = 0; l < n_; ++l) {
            if (a.at(k, l).is_zero()) continue;
            Monomial m{std::vector<std::uint16_t>(e.total(), 0)};
            m.exps[e.n + k] += 1;  // zb_k
            m.exps[l] += 1;        // z_l
            p.add_term(m, a.at(k, l));
        }
    }
    return p;
}

QuadricModel QuadricModel::change_coordinates(const ExactMatrix& c) const {
    if (c.rows() != n_ || c.cols() != n_) throw ValidationError("coordinate change has wrong shape");
    if (!c.is_invertible()) throw ValidationError("coordinate change is singular");
    ExactMatrix ch = c.conj_transpose();
    std::vector<HermitianMatrix> out;
    out.reserve(d_);
    for (std::size_t j = 0; j < d_; ++j)
        out.emplace_back(ch * forms_[j].mat() * c, j);
    return QuadricModel(n_, d_, std::move(out));
}

bool QuadricModel::operator==(const QuadricModel& other) const {
    if (n_ != other.n_ || d_ != other.d_) return false;
    for (std::size_t j = 0; j < d_; ++j)
        if (!(forms_[j].mat() == other.forms_[j].mat())) return false;
    return true;
}

namespace {

using nlohmann::json;

Rational rational_from_json(const json& v, const std::string& where) {
    try {
        if (v.is_number_integer()) return Rational(v.get<long>());
        if (v.is_string()) return Rational::parse(v.get<std::string>());
    } catch (const std::runtime_error& e) {
        throw ParseError(where + ": " + e.what());
    }
    throw ParseError(where + ": expected an integer or a \"p/q\" string");
}

GaussianRational entry_from_json(const json& v, const std::string& where) {
    if (v.is_object()) {
        if (!v.contains("re") || !v.contains("im") || v.size() != 2)
            throw ParseError(where + ": complex entries need exactly \"re\" and \"im\"");
        return GaussianRational(rational_from_json(v["re"], where + " (re)"),
                                rational_from_json(v["im"], where + " (im)"));
    }
    return GaussianRational(rational_from_json(v, where));
}

json entry_to_json(const GaussianRational& v) {
    if (v.im().is_zero()) return v.re().str();
    return json{{"re", v.re().str()}, {"im", v.im().str()}};
}

}  // namespace

QuadricModel model_from_json_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("n") || !doc.contains("d") || !doc.contains("matrices"))
        throw ParseError("model JSON needs \"n\", \"d\" and \"matrices\"");
    if (!doc["n"].is_number_integer() || !doc["d"].is_number_integer())
        throw ParseError("\"n\" and \"d\" must be integers");
    long n = doc["n"].get<long>(), d = doc["d"].get<long>();
    if (n < 1 || d < 1) throw ParseError("\"n\" and \"d\" must be positive");
    const json& mats = doc["matrices"];
    if (!mats.is_array() || mats.size() != static_cast<std::size_t>(d)) {
        std::ostringstream os;
        os << "expected " << d << " matrices, got " << (mats.is_array() ? mats.size() : 0);
        throw ParseError(os.str());
    }
    std::vector<HermitianMatrix> forms;
    for (std::size_t j = 0; j < static_cast<std::size_t>(d); ++j) {
        const json& rows = mats[j];
        std::ostringstream name;
        name << "matrix " << j + 1;
        if (!rows.is_array() || rows.size() != static_cast<std::size_t>(n))
            throw ParseError(name.str() + ": expected " + std::to_string(n) + " rows");
        ExactMatrix a(n, n);
        for (std::size_t r = 0; r < static_cast<std::size_t>(n); ++r) {
            if (!rows[r].is_array() || rows[r].size() != static_cast<std::size_t>(n))
                throw ParseError(name.str() + ", row " + std::to_string(r + 1) + ": expected " +
                                 std::to_string(n) + " entries");
            for (std::size_t c = 0; c < static_cast<std::size_t>(n); ++c) {
                std::ostringstream where;
                where << name.str() << ", entry (" << r + 1 << "," << c + 1 << ")";
                a.at(r, c) = entry_from_json(rows[r][c], where.str());
            }
        }
        forms.emplace_back(std::move(a), j);
    }
    return QuadricModel(n, d, std::move(forms));
}

std::string model_to_json_text(const QuadricModel& m, bool pretty) {
    json mats = json::array();
    for (std::size_t j = 0; j < m.d(); ++j) {
        json rows = json::array();
        for (std::size_t r = 0; r < m.n(); ++r) {
            json row = json::array();
            for (std::size_t c = 0; c < m.n(); ++c) row.push_back(entry_to_json(m.form(j).at(r, c)));
            rows.push_back(std::move(row));
        }
        mats.push_back(std::move(rows));
    }
    json doc{{"n", m.n()}, {"d", m.d()}, {"matrices", std::move(mats)}};
    return pretty ? doc.dump(2) : doc.dump();
}

QuadricModel load_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open model file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return model_from_json_text(buf.str());
}

}  // namespace crquad
