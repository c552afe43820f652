#include "biprox/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace biprox {

double round12(double x) {
    if (!std::isfinite(x)) return x;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    double y = std::strtod(buf, nullptr);
    return y == 0 ? 0.0 : y;
}

Json to_json(cplx z) { return Json::array({round12(std::real(z)), round12(std::imag(z))}); }

Json to_json(const CVector& v) {
    Json a = Json::array();
    for (const auto& z : v) a.push_back(to_json(z));
    return a;
}

Json to_json(const Rational& q) {
    if (q.denominator() == 1) return std::to_string(q.numerator());
    return std::to_string(q.numerator()) + "/" + std::to_string(q.denominator());
}

Json to_json(const std::optional<int>& v) { return v ? Json(*v) : Json(nullptr); }

Json to_json(const ClassificationReport& r) {
    Json j;
    j["context"] = r.label;
    j["side"] = to_string(r.side);
    j["index"] = r.index;
    j["lattice_size"] = r.lattice_size;
    j["distributive"] = r.distributive;
    j["dedekind"] = r.dedekind;
    j["cyclic"] = r.cyclic;
    j["w_cyclic"] = r.w_cyclic;
    j["w_plus_cyclic"] = r.w_plus_cyclic;
    j["Z"] = r.Z;
    j["ZZ"] = r.ZZ;
    j["F2"] = r.F2;
    j["Z_tilde"] = to_string(r.Z_tilde);
    j["boolean_rank"] = to_json(r.boolean_rank);
    j["sum_bound"] = to_json(r.sum_bound);
    j["maximal_biprojections"] = r.maximal;
    j["w_cyclic_block"] = to_json(r.w_cyclic_block);
    j["generated_biprojections"] = r.generated;
    Json len = Json::object();
    for (const auto& [name, v] : r.lengths) len[name] = to_json(v);
    j["lengths"] = len;
    return j;
}

Json to_json(const FiniteLattice& l, const std::vector<Subgroup>& nodes) {
    Json j;
    j["size"] = l.size();
    j["height"] = height(l);
    Json ns = Json::array();
    for (int i = 0; i < l.size(); ++i) {
        Json n;
        n["id"] = i;
        n["subgroup"] = i < static_cast<int>(nodes.size()) ? subgroup_label(nodes[i]) : l.label(i);
        if (i < static_cast<int>(nodes.size())) n["order"] = nodes[i].order();
        ns.push_back(n);
    }
    j["nodes"] = ns;
    Json covers = Json::array();
    for (int a = 0; a < l.size(); ++a)
        for (int b = 0; b < l.size(); ++b)
            if (l.covers(a, b)) covers.push_back(Json::array({a, b}));
    j["covers"] = covers;
    j["distributive"] = is_distributive(l);
    j["modular"] = is_modular(l);
    j["boolean_rank"] = to_json(boolean_rank(l));
    return j;
}

Json to_json(const CoproductTable& t) {
    Json j;
    j["basis"] = t.labels;
    j["scale"] = round12(t.scale);
    Json rows = Json::array();
    for (std::size_t a = 0; a < t.entries.size(); ++a) {
        Json row = Json::array();
        for (std::size_t b = 0; b < t.entries[a].size(); ++b) row.push_back(to_json(t.entries[a][b]));
        rows.push_back(row);
    }
    j["entries"] = rows;
    return j;
}

Json to_json(const FusionRing& ring) {
    Json j;
    j["rank"] = ring.rank;
    j["dual"] = ring.dual;
    j["N"] = ring.N;
    return j;
}

std::string format_combination(const CVector& coeffs, const std::vector<std::string>& labels, double tol) {
    std::string out;
    char buf[64];
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const cplx c = coeffs[i];
        if (std::abs(c) <= tol) continue;
        std::string term;
        if (std::abs(std::imag(c)) <= tol) {
            double re = std::real(c);
            const bool neg = re < 0;
            re = std::abs(re);
            if (std::abs(re - 1) <= tol)
                term = labels[i];
            else {
                std::snprintf(buf, sizeof buf, "%.6g", re);
                term = buf + labels[i];
            }
            if (out.empty())
                out = neg ? "-" + term : term;
            else
                out += (neg ? " - " : " + ") + term;
            continue;
        }
        std::snprintf(buf, sizeof buf, "(%.6g%+.6gi)", round12(std::real(c)), round12(std::imag(c)));
        out += (out.empty() ? "" : " + ") + std::string(buf) + labels[i];
    }
    return out.empty() ? "0" : out;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace biprox
