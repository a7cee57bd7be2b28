#include "pdcnet/json_io.hpp"

#include <cstdio>

namespace pdcnet {

OrderedJson fock_state_to_json(const FockState& state) {
    OrderedJson j;
    j["mode_count"] = state.mode_count;
    j["cutoff"] = state.cutoff;
    j["terms"] = OrderedJson::array();
    for (const auto& [occ, amp] : state.terms) {
        OrderedJson term;
        term["occupation"] = occ;
        term["re"] = amp.real();
        term["im"] = amp.imag();
        j["terms"].push_back(term);
    }
    return j;
}

OrderedJson evolution_report_to_json(const EvolutionReport& report) {
    OrderedJson j = fock_state_to_json(report.final_state);
    j["leaked_weight"] = report.leaked_weight;
    j["norm_sq"] = norm_sq(report.final_state);
    j["taylor_terms_used"] = report.taylor_terms_used;
    return j;
}

namespace {

OrderedJson rational_to_json(const Rational& r) {
    if (r.num().fits_int64() && r.den().fits_int64()) {
        OrderedJson j;
        j["num"] = r.num().to_int64();
        j["den"] = r.den().to_int64();
        return j;
    }
    OrderedJson j;
    j["num"] = r.num().to_string();
    j["den"] = r.den().to_string();
    return j;
}

} // namespace

OrderedJson symbolic_state_to_json(const SymbolicState& state) {
    OrderedJson j;
    j["parties"] = state.parties;
    j["order_max"] = state.order_max;
    j["convention"] = "amplitude = coeff * sqrt(prod occupation[i]!)";
    j["amplitudes"] = OrderedJson::array();
    for (const auto& [occ, poly] : state.amps) {
        OrderedJson entry;
        entry["occupation"] = occ;
        entry["terms"] = OrderedJson::array();
        for (const auto& [key, coeff] : poly) {
            OrderedJson term;
            term["m"] = key.g_power;
            term["n"] = key.gbar_power;
            term["k"] = key.phase;
            term["coeff"]["re"] = rational_to_json(coeff.re);
            term["coeff"]["im"] = rational_to_json(coeff.im);
            entry["terms"].push_back(term);
        }
        j["amplitudes"].push_back(entry);
    }
    return j;
}

OrderedJson probability_polynomial_to_json(const ProbabilityPolynomial& poly) {
    OrderedJson j;
    j["parties"] = poly.parties;
    j["terms"] = OrderedJson::array();
    for (const auto& [key, coeff] : poly.terms) {
        OrderedJson term;
        term["gsq_power"] = key.gsq_power;
        term["k"] = key.phase;
        term["coeff"]["re"] = rational_to_json(coeff.re);
        term["coeff"]["im"] = rational_to_json(coeff.im);
        j["terms"].push_back(term);
    }
    return j;
}

OrderedJson behavior_to_json(const Behavior& behavior) {
    OrderedJson j;
    j["N"] = behavior.parties;
    j["settings_labels"] = {"setting1", "setting2"};
    j["table"] = OrderedJson::array();
    const int n = behavior.settings_count();
    for (int s = 0; s < n; ++s) {
        for (int o = 0; o < n; ++o) {
            OrderedJson row;
            row["s"] = OrderedJson::array();
            row["o"] = OrderedJson::array();
            for (int x = 0; x < behavior.parties; ++x) {
                row["s"].push_back(((s >> x) & 1) + 1);
                row["o"].push_back(((o >> x) & 1) ? "+" : "-");
            }
            row["p"] = behavior.p[s][o];
            j["table"].push_back(row);
        }
    }
    return j;
}

Behavior behavior_from_json(const OrderedJson& j) {
    Behavior b;
    b.parties = j.at("N").get<int>();
    const int n = 1 << b.parties;
    b.p.assign(n, std::vector<double>(n, 0.0));
    for (const auto& row : j.at("table")) {
        int s = 0, o = 0;
        for (int x = 0; x < b.parties; ++x) {
            if (row.at("s")[x].get<int>() == 2) s |= 1 << x;
            if (row.at("o")[x].get<std::string>() == "+") o |= 1 << x;
        }
        b.p[s][o] = row.at("p").get<double>();
    }
    return b;
}

template <class T>
OrderedJson lhv_verdict_to_json(const BasicLhvVerdict<T>& verdict) {
    OrderedJson j;
    j["feasible"] = verdict.feasible;
    auto scalar = [](const T& v) {
        if constexpr (std::is_same_v<T, double>)
            return OrderedJson(v);
        else
            return OrderedJson(v.to_string());
    };
    if (verdict.feasible) {
        j["weights"] = OrderedJson::array();
        for (const auto& w : verdict.weights) j["weights"].push_back(scalar(w));
        j["reconstruction_error"] = scalar(verdict.reconstruction_error);
    } else {
        j["certificate"]["coeffs"] = OrderedJson::array();
        for (const auto& c : verdict.certificate_cells)
            j["certificate"]["coeffs"].push_back(scalar(c));
        j["certificate"]["offset"] = scalar(verdict.certificate_offset);
        j["certificate"]["violation"] = scalar(verdict.violation);
        j["certificate"]["max_column_value"] = scalar(verdict.max_column_value);
    }
    j["solver_stats"]["pivots"] = verdict.pivots;
    return j;
}

template OrderedJson lhv_verdict_to_json<double>(const BasicLhvVerdict<double>&);
template OrderedJson lhv_verdict_to_json<Rational>(const BasicLhvVerdict<Rational>&);

OrderedJson paradox_to_json(const ParadoxGap& gap, const DegradationReport& degradation) {
    OrderedJson j;
    j["lhs"] = gap.lhs;
    j["rhs"] = gap.rhs;
    j["gap"] = gap.gap;
    j["budget"] = degradation.budget;
    j["deviation"] = degradation.deviation;
    j["deviation_per_g_squared"] = degradation.per_g_squared;
    j["outside_small_g"] = degradation.outside_small_g;
    j["paradox_survives"] = degradation.paradox_survives;
    return j;
}

OrderedJson network_run_to_json(const NetworkSpec& network,
                                const std::vector<PartySetting>& settings) {
    OrderedJson j;
    j["parties"] = network.parties;
    j["g"]["re"] = network.sources.front().g.real();
    j["g"]["im"] = network.sources.front().g.imag();
    j["settings"] = OrderedJson::array();
    for (const auto& s : settings) {
        OrderedJson row;
        row["pump"] = s.pump_on ? "on" : "off";
        row["phase"] = s.phase;
        j["settings"].push_back(row);
    }
    return j;
}

NetworkRun network_run_from_json(const OrderedJson& j) {
    NetworkRun run;
    int parties = j.at("parties").get<int>();
    Complex g(j.at("g").at("re").get<double>(), j.at("g").at("im").get<double>());
    run.network = build_ring_network(parties, g);
    for (const auto& row : j.at("settings")) {
        PartySetting s;
        s.pump_on = row.at("pump").get<std::string>() == "on";
        s.phase = row.at("phase").get<double>();
        run.settings.push_back(s);
    }
    if (static_cast<int>(run.settings.size()) != parties)
        throw std::invalid_argument("json: settings count must match parties");
    return run;
}

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

} // namespace pdcnet
