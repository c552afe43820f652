#include "biprox/survey.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>
#include <tuple>

#include "biprox/catalog.hpp"

namespace biprox {

namespace {

struct Candidate {
    GroupPtr group;
    Subgroup sub;
    std::string group_name;
};

bool group_is_cyclic(const GroupPtr& g) {
    for (int i = 0; i < g->order(); ++i)
        if (g->element_order(i) == g->order()) return true;
    return false;
}

void classify_into(SurveyRecord& rec, const Candidate& c, std::uint64_t seed) {
    Inclusion inc(c.group, c.sub);
    auto primal = BoxContext::primal(c.group, c.sub, seed);
    auto dual = BoxContext::dual(c.group, c.sub, seed);
    auto rp = classify(primal);
    auto rd = classify(dual);
    rec.interval_size = rp.lattice_size;
    rec.maximal = rp.lattice_size == 2;
    rec.group_cyclic = c.sub.is_trivial() && group_is_cyclic(c.group);
    rec.distributive = rp.distributive;
    rec.dedekind = rp.dedekind;
    rec.cyclic = rp.cyclic;
    rec.w_cyclic_primal = rp.w_cyclic;
    rec.w_cyclic_dual = rd.w_cyclic;
    rec.w_plus_primal = rp.w_plus_cyclic;
    rec.w_plus_dual = rd.w_plus_cyclic;
    rec.Z = rp.Z;
    rec.ZZ = rp.ZZ;
    rec.F2 = rp.F2;
    rec.boolean_rank = rp.boolean_rank;
    rec.sum_primal = rp.sum_bound;
    rec.sum_dual = rd.sum_bound;
    rec.h_cyclic = is_H_cyclic(inc).has_value();
    rec.linearly_primitive = is_linearly_primitive_inclusion(inc, seed).has_value();
}

std::string csv_bool(bool b) { return b ? "1" : "0"; }

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

}  // namespace

SurveyResult run_survey(const SurveyOptions& opt) {
    std::vector<std::string> specs = opt.groups.empty() ? catalog_names(opt.max_order) : opt.groups;
    std::vector<std::tuple<int, std::string, GroupPtr>> groups;
    for (const auto& s : specs) {
        GroupPtr g = parse_group_spec(s, opt.max_order);
        groups.emplace_back(g->order(), g->name().empty() ? s : g->name(), g);
    }
    std::sort(groups.begin(), groups.end(),
              [](const auto& a, const auto& b) { return std::tie(std::get<0>(a), std::get<1>(a)) < std::tie(std::get<0>(b), std::get<1>(b)); });
    groups.erase(std::unique(groups.begin(), groups.end(),
                             [](const auto& a, const auto& b) { return std::get<1>(a) == std::get<1>(b); }),
                 groups.end());

    SurveyResult result;
    std::vector<Candidate> reps;
    std::vector<int> sizes;
    std::map<std::tuple<int, int, int>, std::vector<int>> buckets;
    for (const auto& [order, name, g] : groups) {
        result.groups.push_back(name);
        auto subs = all_subgroups(g);
        for (const auto& h : conjugacy_class_representatives(subs, whole_group(g))) {
            const int index = g->order() / h.order();
            if (index < 2 || index > opt.max_index) continue;
            ++result.inclusions;
            Inclusion inc(g, h);
            const auto key = std::make_tuple(index, g->order() / core(h).order(), inc.interval().size());
            auto& bucket = buckets[key];
            int found = -1;
            for (int r : bucket)
                if (inclusions_equivalent(Inclusion(reps[r].group, reps[r].sub), inc)) {
                    found = r;
                    break;
                }
            if (found >= 0) {
                ++sizes[found];
                continue;
            }
            bucket.push_back(static_cast<int>(reps.size()));
            reps.push_back({g, h, name});
            sizes.push_back(1);
        }
    }

    result.records.resize(reps.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr fatal;
    std::mutex fatal_mu;
    auto worker = [&] {
        for (std::size_t i = next++; i < reps.size(); i = next++) {
            auto& rec = result.records[i];
            const auto& c = reps[i];
            rec.class_id = static_cast<int>(i);
            rec.group = c.group_name;
            rec.subgroup = subgroup_label(c.sub);
            rec.group_order = c.group->order();
            rec.index = c.group->order() / c.sub.order();
            rec.class_size = sizes[i];
            try {
                classify_into(rec, c, opt.seed);
            } catch (const Error& e) {
                if (e.kind() == ErrorKind::cap || e.kind() == ErrorKind::numeric) {
                    rec.error = e.name();
                    continue;
                }
                std::lock_guard<std::mutex> lock(fatal_mu);
                if (!fatal) fatal = std::current_exception();
            }
        }
    };
    const int jobs = std::max(1, opt.jobs);
    std::vector<std::thread> pool;
    for (int t = 1; t < jobs; ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (fatal) std::rethrow_exception(fatal);
    return result;
}

std::string survey_csv(const SurveyResult& r) {
    std::ostringstream os;
    os << "class,group,subgroup,group_order,index,interval_size,class_size,maximal,distributive,dedekind,cyclic,"
          "w_cyclic_primal,w_cyclic_dual,w_plus_primal,w_plus_dual,h_cyclic,linearly_primitive,Z,ZZ,F2,"
          "boolean_rank,sum_primal,sum_dual,error\n";
    for (const auto& x : r.records) {
        os << x.class_id << ',' << csv_field(x.group) << ',' << csv_field(x.subgroup) << ',' << x.group_order << ','
           << x.index << ',' << x.interval_size << ',' << x.class_size << ',';
        if (!x.error.empty()) {
            os << ",,,,,,,,,,,,,,,," << x.error << '\n';
            continue;
        }
        os << csv_bool(x.maximal) << ',' << csv_bool(x.distributive) << ',' << csv_bool(x.dedekind) << ','
           << csv_bool(x.cyclic) << ',' << csv_bool(x.w_cyclic_primal) << ',' << csv_bool(x.w_cyclic_dual) << ','
           << csv_bool(x.w_plus_primal) << ',' << csv_bool(x.w_plus_dual) << ',' << csv_bool(x.h_cyclic) << ','
           << csv_bool(x.linearly_primitive) << ',' << csv_bool(x.Z) << ',' << csv_bool(x.ZZ) << ','
           << csv_bool(x.F2) << ',' << (x.boolean_rank ? std::to_string(*x.boolean_rank) : "") << ','
           << to_json(x.sum_primal).get<std::string>() << ',' << to_json(x.sum_dual).get<std::string>() << ",\n";
    }
    return os.str();
}

Json survey_summary(const SurveyResult& r, const SurveyOptions& opt) {
    int ok = 0, errors = 0, distributive = 0, dedekind = 0, cyclic = 0, wp = 0, wd = 0, both = 0, dist_ded = 0;
    int maximal = 0, maximal_cyclic = 0, zn = 0, zn_cyclic = 0, mismatch_primal = 0, mismatch_dual = 0;
    bool cyclic_subset_w = true;
    for (const auto& x : r.records) {
        if (!x.error.empty()) {
            ++errors;
            continue;
        }
        ++ok;
        distributive += x.distributive;
        dedekind += x.dedekind;
        cyclic += x.cyclic;
        wp += x.w_cyclic_primal;
        wd += x.w_cyclic_dual;
        both += x.w_cyclic_primal && x.w_cyclic_dual;
        dist_ded += x.distributive && x.dedekind;
        if (x.cyclic && !(x.w_cyclic_primal && x.w_cyclic_dual)) cyclic_subset_w = false;
        if (x.maximal) {
            ++maximal;
            maximal_cyclic += x.cyclic;
        }
        if (x.group_cyclic) {
            ++zn;
            zn_cyclic += x.cyclic;
        }
        mismatch_primal += x.w_cyclic_primal != x.linearly_primitive;
        mismatch_dual += x.w_cyclic_dual != x.h_cyclic;
    }
    Json j;
    j["schema"] = kSchema;
    j["max_index"] = opt.max_index;
    j["seed"] = opt.seed;
    j["groups"] = r.groups;
    Json c;
    c["inclusions"] = r.inclusions;
    c["classes"] = r.records.size();
    c["classified"] = ok;
    c["errors"] = errors;
    c["distributive"] = distributive;
    c["dedekind"] = dedekind;
    c["cyclic"] = cyclic;
    c["w_cyclic_primal"] = wp;
    c["w_cyclic_dual"] = wd;
    c["w_cyclic_both"] = both;
    c["maximal"] = maximal;
    j["counts"] = c;
    Json k;
    k["cyclic_within_w_cyclic"] = cyclic_subset_w && cyclic <= both && both <= ok;
    k["cyclic_is_distributive_and_dedekind"] = cyclic == dist_ded;
    k["maximal_are_cyclic"] = maximal == maximal_cyclic;
    k["cyclic_groups_are_cyclic"] = zn == zn_cyclic;
    k["primal_w_cyclic_vs_linear_primitivity_mismatches"] = mismatch_primal;
    k["dual_w_cyclic_vs_h_cyclic_mismatches"] = mismatch_dual;
    j["checks"] = k;
    return j;
}

}  // namespace biprox
