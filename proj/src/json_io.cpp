#include "lpoly/json_io.hpp"

#include <string>

namespace lpoly {

using nlohmann::json;

namespace {

json one_based(const VariableSplit& split) {
    json out = json::array();
    for (auto i : split.members()) out.push_back(i + 1);
    return out;
}

const char* mode_name(BlockMode m) { return m == BlockMode::exact ? "exact" : "sampled"; }

}  // namespace

void to_json(json& j, const Assignment& x) { j = x.to_signs(); }

void to_json(json& j, const BoundSummary& b) {
    j = json{{"n", b.n},
             {"u", b.u},
             {"d", b.d},
             {"sqrt_u", b.sqrt_u},
             {"sum_sqrt_ui", b.sum_sqrt_ui},
             {"lb_main", b.lb_main},
             {"ub_chaining", b.ub_chaining},
             {"ub_simple", b.ub_simple},
             {"lb", b.lb},
             {"ub", b.ub}};
}

void to_json(json& j, const SupNormResult& r) {
    j = json{{"value", r.value}, {"argmax", r.argmax}, {"evaluations", r.evaluations}, {"exact", r.exact}};
}

void to_json(json& j, const BlockRecord& b) {
    j = json{{"k", b.k},
             {"v_k", b.size},
             {"target", b.target},
             {"verified_bound", b.verified_bound},
             {"mode", mode_name(b.mode)},
             {"resamples", b.resamples},
             {"width", b.width}};
}

void to_json(json& j, const ChainingCertificate& c) {
    json perm = json::array();
    for (auto v : c.partition.order) perm.push_back(v + 1);
    const auto bounds = bound_summary(c.poly.family());
    j = json{{"lambda", c.lambda},
             {"n", c.poly.num_vars()},
             {"permutation", perm},
             {"blocks", c.blocks},
             {"signs", c.poly.signs()},
             {"total_bound", c.total_bound},
             {"lemma_bound", c.lemma_bound()},
             {"chaining_bound", bounds.ub_chaining},
             {"achieved", c.achieved ? json(*c.achieved) : json(nullptr)},
             {"lpoly", serialize(c.poly)}};
}

ChainingCertificate certificate_from_json(const json& j) {
    ChainingCertificate c;
    c.poly = parse_family(j.at("lpoly").get<std::string>());
    c.lambda = j.at("lambda").get<double>();
    c.partition = build_partition(c.poly.family());
    for (const auto& b : j.at("blocks")) {
        BlockRecord rec;
        rec.k = b.at("k").get<std::size_t>();
        rec.size = b.at("v_k").get<std::size_t>();
        rec.target = b.at("target").get<double>();
        rec.verified_bound = b.at("verified_bound").get<std::int64_t>();
        rec.mode = b.at("mode").get<std::string>() == "exact" ? BlockMode::exact : BlockMode::sampled;
        rec.resamples = b.at("resamples").get<std::size_t>();
        rec.width = b.value("width", std::size_t{0});
        c.blocks.push_back(rec);
    }
    c.total_bound = j.at("total_bound").get<std::int64_t>();
    if (!j.at("achieved").is_null()) c.achieved = j.at("achieved").get<std::int64_t>();
    return c;
}

void to_json(json& j, const SplitReport& s) {
    j = json{{"X", one_based(s.split)}, {"m", s.m},          {"score", s.score},
             {"target", s.target},      {"attempts", s.attempts}, {"target_met", s.target_met}};
}

void to_json(json& j, const BernsteinSweep& s) {
    j = json{{"coefficients", s.coefficients},
             {"z_grid", s.z_grid},
             {"f_values", s.f_values},
             {"z_star", s.z_star},
             {"f_at_z_star", s.f_at_star},
             {"f_star", s.f_star},
             {"h1", s.h1},
             {"guarantee", s.guarantee},
             {"flip_probability", (1 - s.z_star) / 2}};
}

void to_json(json& j, const WitnessConfig& c) {
    j = json{{"seed", c.seed},
             {"split_attempts", c.split_attempts},
             {"y_trials", c.y_trials},
             {"grid_size", c.grid_size},
             {"polish", c.polish}};
}

void to_json(json& j, const WitnessReport& r) {
    j = json{{"d", r.d},
             {"sum_sqrt_ui", r.sum_sqrt_ui},
             {"split", r.split},
             {"y", r.y_selection.y},
             {"sum_abs_hi", r.y_selection.sum_abs_hi},
             {"khintchine_target", r.khintchine_target},
             {"y_target_met", r.y_selection.target_met},
             {"x_aligned", r.x_aligned},
             {"sweep", r.sweep},
             {"rounding",
              {{"sigma", r.rounding.sigma},
               {"point", r.rounding.point},
               {"value", r.rounding.value},
               {"min_step", r.rounding.min_step},
               {"monotone", r.rounding.monotone}}},
             {"pipeline_value", r.pipeline_value},
             {"final", r.final_point},
             {"final_value", r.final_value},
             {"polished", r.polished},
             {"guaranteed", r.guaranteed},
             {"guarantee_met", r.guarantee_met},
             {"stage_targets_met", r.stage_targets_met},
             {"config", r.config}};
}

void to_json(json& j, const PaleyReport& r) {
    j = json{{"p", r.p},         {"sup_norm", r.sup_norm}, {"exact", r.exact},
             {"bound", r.bound}, {"floor", r.floor},       {"pass", r.pass}};
}

void to_json(json& j, const DetMaxResult& r) {
    j = json{{"d", r.d}, {"value", r.value}, {"exact", r.exact}, {"argmax", r.argmax}, {"matrices", r.matrices}};
}

void to_json(json& j, const DeterminantComparison& c) {
    j = json{{"d", c.d},
             {"det_max", c.det_max},
             {"hadamard_bound", c.hadamard_bound},
             {"random_bound", c.random_bound},
             {"floor", c.floor},
             {"random_sup_norms", c.random_sup_norms},
             {"best_random", c.best_random},
             {"floor_respected", c.floor_respected}};
}

void to_json(json& j, const MomentReport& m) {
    j = json{{"w", m.w},
             {"delta", m.delta},
             {"e_abs", m.e_abs},
             {"e_sq", m.e_sq},
             {"e_4", m.e_4},
             {"lower_bound", m.lower_bound},
             {"bonami_bound", m.bonami_bound},
             {"pz_prob", m.pz_prob},
             {"pz_bound", m.pz_bound},
             {"pz_mean_bound", m.pz_mean_bound},
             {"parseval_exact", m.parseval_exact()},
             {"berger_holds", m.berger_holds()},
             {"bonami_holds", m.bonami_holds()},
             {"pz_holds", m.pz_holds()}};
}

void to_json(json& j, const ConverseReport& r) {
    j = json{{"delta", r.delta},
             {"w", r.poly.size()},
             {"moments", r.moments},
             {"monomial_count_ok", r.monomial_count_ok},
             {"value_set_ok", r.value_set_ok},
             {"tail_probability_ok", r.tail_probability_ok},
             {"mean_abs_ok", r.mean_abs_ok},
             {"upper_ok", r.upper_ok},
             {"zero_probability", r.zero_probability}};
}

void to_json(json& j, const GapRow& r) {
    j = json{{"delta", r.delta},
             {"instances", r.instances},
             {"min_ratio", r.min_ratio},
             {"mean_ratio", r.mean_ratio},
             {"converse_ratio", r.converse_ratio},
             {"lower_base", r.lower_base},
             {"upper_base", r.upper_base},
             {"lower_respected", r.lower_respected},
             {"converse_below_upper", r.converse_below_upper}};
}

}  // namespace lpoly
