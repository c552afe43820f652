#include "biprox/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "biprox/catalog.hpp"
#include "biprox/interval.hpp"
#include "biprox/survey.hpp"

namespace biprox {

namespace {

using Terms = std::vector<std::pair<int, double>>;

CVector combo(int n, const Terms& terms) {
    CVector v(n);
    for (auto [k, c] : terms) v[k] += c;
    return v;
}

std::vector<std::vector<CVector>> build(int n, const std::vector<std::vector<Terms>>& rows) {
    std::vector<std::vector<CVector>> t;
    for (const auto& row : rows) {
        std::vector<CVector> r;
        for (const auto& e : row) r.push_back(combo(n, e));
        t.push_back(std::move(r));
    }
    return t;
}

const std::set<std::string> kDefaultLengths{"cl", "wcl", "dl", "tcl", "tbl", "tb4l", "bcl", "bbl", "bb4l", "h"};

std::vector<Side> sides_of(const std::string& s) {
    if (s == "primal") return {Side::primal};
    if (s == "dual") return {Side::dual};
    if (s == "both") return {Side::primal, Side::dual};
    throw ParseError("side must be primal, dual or both");
}

Json theorems_json(const std::vector<Implication>& v) {
    Json a = Json::array();
    for (const auto& i : v) {
        Json j;
        j["name"] = i.name;
        j["hypothesis"] = i.hypothesis;
        j["conclusion"] = to_string(i.conclusion);
        j["holds"] = i.holds();
        a.push_back(j);
    }
    return a;
}

Json group_json(const GroupPtr& g, const Subgroup& h) {
    Json j;
    j["group"] = {{"name", g->name()}, {"order", g->order()}, {"degree", g->degree()}};
    j["subgroup"] = {{"generators", subgroup_label(h)}, {"order", h.order()}};
    j["index"] = g->order() / h.order();
    return j;
}

void render_table(const CoproductTable& t, std::ostream& out) {
    std::vector<std::vector<std::string>> cells;
    std::vector<std::string> head{"*"};
    head.insert(head.end(), t.labels.begin(), t.labels.end());
    cells.push_back(head);
    for (std::size_t a = 0; a < t.entries.size(); ++a) {
        std::vector<std::string> row{t.labels[a]};
        for (const auto& e : t.entries[a]) row.push_back(format_combination(e, t.labels));
        cells.push_back(row);
    }
    std::vector<std::size_t> width(head.size(), 0);
    for (const auto& row : cells)
        for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    for (const auto& row : cells) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << row[c] << std::string(width[c] - row[c].size(), ' ');
            out << (c + 1 < row.size() ? " | " : "\n");
        }
    }
}

}  // namespace

std::vector<std::vector<CVector>> expected_s3_table() {
    enum { e1, e2, e11, e12, e21, e22 };
    return build(6, {
        {{{e1, 1}}, {{e2, 1}}, {{e11, 1}}, {{e12, 1}}, {{e21, 1}}, {{e22, 1}}},
        {{{e2, 1}}, {{e1, 1}}, {{e11, 1}}, {{e12, -1}}, {{e21, -1}}, {{e22, 1}}},
        {{{e11, 1}}, {{e11, 1}}, {{e22, 2}}, {}, {}, {{e1, 2}, {e2, 2}}},
        {{{e12, 1}}, {{e12, -1}}, {}, {{e21, 2}}, {{e1, 2}, {e2, -2}}, {}},
        {{{e21, 1}}, {{e21, -1}}, {}, {{e1, 2}, {e2, -2}}, {{e12, 2}}, {}},
        {{{e22, 1}}, {{e22, 1}}, {{e1, 2}, {e2, 2}}, {}, {}, {{e11, 2}}},
    });
}

std::vector<std::vector<CVector>> expected_s2s4_table() {
    enum { e1, e2, e3, e4, e5, e6, e7 };
    return build(7, {
        {{{e1, 1}}, {{e2, 1}}, {{e3, 1}}, {{e4, 1}}, {{e5, 1}}, {{e6, 1}}, {{e7, 1}}},
        {{{e2, 1}}, {{e1, 2}, {e2, 1}}, {{e4, 1}, {e5, 1}}, {{e3, 1}, {e5, 1}}, {{e3, 1}, {e4, 1}}, {{e6, 1}, {e7, 2}}, {{e6, 1}}},
        {{{e3, 1}}, {{e5, 1}, {e6, 1}}, {{e1, 2}, {e3, 1}}, {{e4, 1}, {e7, 2}}, {{e2, 1}, {e6, 1}}, {{e2, 1}, {e5, 1}}, {{e4, 1}}},
        {{{e4, 1}}, {{e4, 1}, {e7, 2}}, {{e2, 1}, {e5, 1}}, {{e5, 1}, {e6, 1}}, {{e2, 1}, {e6, 1}}, {{e1, 2}, {e3, 1}}, {{e3, 1}}},
        {{{e5, 1}}, {{e3, 1}, {e6, 1}}, {{e2, 1}, {e4, 1}}, {{e3, 1}, {e6, 1}}, {{e1, 2}, {e7, 2}}, {{e2, 1}, {e4, 1}}, {{e5, 1}}},
        {{{e6, 1}}, {{e3, 1}, {e5, 1}}, {{e6, 1}, {e7, 2}}, {{e1, 2}, {e2, 1}}, {{e3, 1}, {e4, 1}}, {{e4, 1}, {e5, 1}}, {{e2, 1}}},
        {{{e7, 1}}, {{e4, 1}}, {{e6, 1}}, {{e2, 1}}, {{e5, 1}}, {{e3, 1}}, {{e1, 1}}},
    });
}

namespace {

double deviation(const CoproductTable& t, const std::vector<std::vector<CVector>>& e, const std::vector<int>& p) {
    double dev = 0;
    const std::size_t n = e.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k)
                dev = std::max(dev, std::abs(t.entries[i][j][k] - e[p[i]][p[j]][p[k]]));
    return dev;
}

}  // namespace

TableMatch match_exact(const CoproductTable& t, const std::vector<std::vector<CVector>>& expected) {
    TableMatch m;
    if (t.entries.size() != expected.size()) return m;
    m.permutation.resize(expected.size());
    std::iota(m.permutation.begin(), m.permutation.end(), 0);
    m.max_deviation = deviation(t, expected, m.permutation);
    m.ok = m.max_deviation <= 1e-9;
    return m;
}

TableMatch match_up_to_permutation(const CoproductTable& t, const std::vector<std::vector<CVector>>& expected) {
    TableMatch best;
    if (t.entries.size() != expected.size() || expected.empty()) return best;
    std::vector<int> p(expected.size());
    std::iota(p.begin(), p.end(), 0);
    best.max_deviation = INFINITY;
    do {
        const double dev = deviation(t, expected, p);
        if (dev < best.max_deviation) {
            best.max_deviation = dev;
            best.permutation = p;
        }
        if (dev <= 1e-9) break;
    } while (std::next_permutation(p.begin() + 1, p.end()));
    best.ok = best.max_deviation <= 1e-9;
    return best;
}

CoproductTable default_table(const ContextPtr& ctx, const std::string& basis) {
    const double scale = std::sqrt(static_cast<double>(ctx->index()));
    const bool s3 = ctx->side() == Side::primal && ctx->bottom().is_trivial() && ctx->top().order() == 6 &&
                    ctx->group()->order() == 6 && !ctx->group()->is_abelian();
    if (basis == "matrix-units" || (basis == "auto" && s3))
        return coproduct_table(s3_matrix_unit_basis(ctx), {"e1", "e2", "e11", "e12", "e21", "e22"}, scale);
    if (basis != "auto" && basis != "cosets") throw ParseError("basis must be auto, cosets or matrix-units");
    std::vector<BoxElement> b;
    std::vector<std::string> labels;
    for (int k = 0; k < ctx->dim(); ++k) {
        b.push_back(coset_indicator(ctx, k));
        labels.push_back("e" + std::to_string(k + 1));
    }
    return coproduct_table(b, labels, scale);
}

int exit_code(const Error& e) { return static_cast<int>(e.kind()); }

int cmd_analyze(const CommandOptions& o, std::ostream& out) {
    GroupPtr g = parse_group_spec(o.group, o.max_order);
    Subgroup h = parse_subgroup_spec(g, o.subgroup);
    Inclusion inc(g, h);
    Json j;
    j["schema"] = kSchema;
    j["command"] = "analyze";
    const Json gj = group_json(g, h);
    for (const auto& [k, v] : gj.items()) j[k] = v;
    j["interval"] = to_json(inc.interval(), inc.nodes());
    auto ore = ore_verify(inc);
    j["h_cyclic"] = ore.h_cyclic;
    j["h_cyclic_witness"] = ore.witness ? Json(to_cycles(g->element(*ore.witness))) : Json(nullptr);
    auto dore = dual_ore_conditions(inc);
    j["dual_ore"] = {{"cond_normal", dore.cond_normal}, {"cond_sum", dore.cond_sum}, {"sum", to_json(dore.sum_value)}};
    j["linearly_primitive"] = is_linearly_primitive_inclusion(inc, o.seed).has_value();
    for (Side s : sides_of(o.side)) {
        auto ctx = s == Side::primal ? BoxContext::primal(g, h, o.seed) : BoxContext::dual(g, h, o.seed);
        Json r = to_json(classify(ctx, {kDefaultLengths, true}));
        r["theorems"] = theorems_json(verify_theorems(ctx, true));
        j[to_string(s)] = r;
    }
    if (o.format == "text") {
        out << "group " << g->name() << " order " << g->order() << ", subgroup " << subgroup_label(h) << ", index "
            << inc.index() << "\n";
        out << "interval size " << inc.interval().size() << ", h_cyclic " << ore.h_cyclic << "\n";
        for (Side s : sides_of(o.side)) {
            const Json& r = j[to_string(s)];
            out << to_string(s) << ":";
            for (const char* k : {"distributive", "dedekind", "cyclic", "w_cyclic", "w_plus_cyclic", "Z", "ZZ", "F2"})
                out << ' ' << k << '=' << (r[k].get<bool>() ? "yes" : "no");
            out << " sum=" << r["sum_bound"].get<std::string>() << "\n";
        }
        return 0;
    }
    if (o.format != "json") throw ParseError("analyze supports json or text");
    out << dump(j);
    return 0;
}

int cmd_table(const CommandOptions& o, std::ostream& out) {
    GroupPtr g = parse_group_spec(o.group, o.max_order);
    Subgroup h = parse_subgroup_spec(g, o.subgroup);
    const Side side = o.side == "dual" ? Side::dual : Side::primal;
    if (o.side != "dual" && o.side != "primal" && o.side != "both") throw ParseError("side must be primal or dual");
    auto ctx = BoxContext::make(g, whole_group(g), h, side, o.seed);
    CoproductTable t = default_table(ctx, o.basis);
    Json j;
    j["schema"] = kSchema;
    j["command"] = "table";
    j["context"] = ctx->label();
    j["table"] = to_json(t);
    int code = 0;
    if (o.check_paper) {
        TableMatch m;
        if (side == Side::primal && t.labels.size() == 6 && t.labels[2] == "e11")
            m = match_exact(t, expected_s3_table());
        else if (side == Side::dual && g->order() == 24 && h.order() == 2 && ctx->dim() == 7)
            m = match_up_to_permutation(t, expected_s2s4_table());
        else
            throw ParseError("no stored table for " + ctx->label());
        j["check"] = {{"ok", m.ok}, {"max_deviation", round12(m.max_deviation)}, {"permutation", m.permutation}};
        if (!m.ok) code = 4;
    }
    if (o.format == "text") {
        out << ctx->label() << ", entries times " << round12(t.scale) << "\n";
        render_table(t, out);
        if (o.check_paper) out << "check: " << (code == 0 ? "match" : "MISMATCH") << "\n";
    } else if (o.format == "json") {
        out << dump(j);
    } else {
        throw ParseError("table supports json or text");
    }
    return code;
}

int cmd_survey(const CommandOptions& o, std::ostream& out) {
    SurveyOptions so;
    so.groups = o.groups;
    so.max_index = o.max_index;
    so.max_order = o.max_order;
    so.jobs = o.jobs;
    so.seed = o.seed;
    if (so.max_index < 2 || so.max_index > 48) throw ParseError("max-index must be between 2 and 48");
    SurveyResult r = run_survey(so);
    const std::string csv = survey_csv(r);
    if (!o.csv_path.empty()) {
        std::ofstream f(o.csv_path, std::ios::binary);
        if (!f) throw ParseError("cannot write " + o.csv_path);
        f << csv;
    }
    if (o.format == "csv")
        out << csv;
    else if (o.format == "json")
        out << dump(survey_summary(r, so));
    else
        throw ParseError("survey supports json or csv");
    return 0;
}

int cmd_lattice(const CommandOptions& o, std::ostream& out) {
    GroupPtr g = parse_group_spec(o.group, o.max_order);
    Subgroup h = parse_subgroup_spec(g, o.subgroup);
    Inclusion inc(g, h);
    const auto& l = inc.interval();
    if (o.format == "dot") {
        out << to_dot(l, "interval");
        out << "// nodes " << l.size() << ", height " << height(l) << "\n";
        out << "// distributive " << (is_distributive(l) ? "true" : "false") << ", modular "
            << (is_modular(l) ? "true" : "false") << "\n";
        auto br = boolean_rank(l);
        out << "// boolean_rank " << (br ? std::to_string(*br) : "none") << "\n";
        return 0;
    }
    if (o.format != "json") throw ParseError("lattice supports dot or json");
    Json j;
    j["schema"] = kSchema;
    j["command"] = "lattice";
    const Json gj = group_json(g, h);
    for (const auto& [k, v] : gj.items()) j[k] = v;
    j["lattice"] = to_json(l, inc.nodes());
    out << dump(j);
    return 0;
}

int cmd_fusion_check(const CommandOptions& o, std::ostream& out) {
    FusionRing ring = load_fusion_ring(o.file);
    Json j;
    j["schema"] = kSchema;
    j["command"] = "fusion-check";
    j["rank"] = ring.rank;
    int code = 0;
    try {
        verify_axioms(ring);
        j["axioms"] = true;
    } catch (const AxiomViolation& e) {
        j["axioms"] = false;
        j["violation"] = e.what();
        code = 4;
    }
    if (code == 0) {
        auto dims = fp_dimensions(ring);
        double total = 0;
        bool integral = true;
        Json d = Json::array();
        for (double x : dims) {
            total += x * x;
            integral = integral && std::abs(x - std::round(x)) < 1e-9;
            d.push_back(round12(x));
        }
        auto subs = find_subrings(ring);
        j["dual"] = ring.dual;
        j["dims"] = d;
        j["total_dim"] = round12(total);
        j["integral"] = integral;
        j["simple"] = subs.size() <= 2;
        j["subrings"] = subs;
    }
    if (o.format == "text") {
        out << "rank " << ring.rank << ", axioms " << (code == 0 ? "ok" : "violated") << "\n";
        if (code == 0) out << "dims " << j["dims"].dump() << ", total " << j["total_dim"].dump() << "\n";
    } else {
        out << dump(j);
    }
    return code;
}

int cmd_catalog(const CommandOptions& o, std::ostream& out) {
    Json a = Json::array();
    for (const auto& name : catalog_names(o.max_order)) {
        GroupPtr g = parse_group_spec(name, o.max_order);
        if (o.format == "text")
            out << name << ' ' << g->order() << "\n";
        else
            a.push_back({{"name", name}, {"order", g->order()}});
    }
    if (o.format != "text") out << dump(Json{{"schema", kSchema}, {"command", "catalog"}, {"groups", a}});
    return 0;
}

}  // namespace biprox
