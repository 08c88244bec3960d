#include "udint/report_io.hpp"

#include <cstdio>

namespace udint {

std::string fmt_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string trajectory_csv(const Trajectory& t) {
    std::string out = "n,mean,tail_term\n";
    for (std::size_t i = 0; i < t.checkpoints.size(); ++i) {
        out += std::to_string(t.checkpoints[i]);
        out += ',';
        out += fmt_real(t.means[i]);
        out += ',';
        out += fmt_real(t.tail_terms[i]);
        out += '\n';
    }
    return out;
}

std::string discrepancy_csv(const DiscrepancyReport& r) {
    std::string out = "n,d_star,c,d\n";
    out += std::to_string(r.n);
    out += ',';
    out += fmt_real(r.d_star);
    out += ',';
    out += fmt_real(r.worst_c);
    out += ',';
    out += fmt_real(r.worst_d);
    out += '\n';
    return out;
}

std::string condition_csv(const ConditionReport& r) {
    std::string out =
        "cond1_sup_tail,cond2_oscillation,cond3_gap,verdict1,verdict2,verdict3,"
        "tol_tail,tol_oscillation,tol_integral_gap,note\n";
    out += fmt_real(r.cond1_sup_tail);
    out += ',';
    out += fmt_real(r.cond2_oscillation);
    out += ',';
    out += r.cond3_gap ? fmt_real(*r.cond3_gap) : std::string();
    out += ',';
    out += r.verdict1 ? "true" : "false";
    out += ',';
    out += r.verdict2 ? "true" : "false";
    out += ',';
    out += r.verdict3 ? (*r.verdict3 ? "true" : "false") : "not_evaluable";
    out += ',';
    out += fmt_real(r.tolerances.tail);
    out += ',';
    out += fmt_real(r.tolerances.oscillation);
    out += ',';
    out += fmt_real(r.tolerances.integral_gap);
    out += ',';
    out += ConditionReport::note();
    out += '\n';
    return out;
}

nlohmann::json trajectory_json(const Trajectory& t) {
    return nlohmann::json{{"checkpoints", t.checkpoints},
                          {"means", t.means},
                          {"tail_terms", t.tail_terms}};
}

nlohmann::json discrepancy_json(const DiscrepancyReport& r) {
    return nlohmann::json{
        {"n", r.n}, {"d_star", r.d_star}, {"worst_c", r.worst_c}, {"worst_d", r.worst_d}};
}

nlohmann::json condition_json(const ConditionReport& r) {
    nlohmann::json j{{"cond1_sup_tail", r.cond1_sup_tail},
                     {"cond2_oscillation", r.cond2_oscillation},
                     {"verdict1", r.verdict1},
                     {"verdict2", r.verdict2},
                     {"tolerances",
                      {{"tail", r.tolerances.tail},
                       {"oscillation", r.tolerances.oscillation},
                       {"integral_gap", r.tolerances.integral_gap}}},
                     {"note", ConditionReport::note()}};
    if (r.cond3_gap)
        j["cond3_gap"] = *r.cond3_gap;
    else
        j["cond3_gap"] = nullptr;
    if (r.verdict3)
        j["verdict3"] = *r.verdict3;
    else
        j["verdict3"] = "not_evaluable";
    return j;
}

} // namespace udint
