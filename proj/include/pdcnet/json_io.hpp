#ifndef PDCNET_JSON_IO_HPP
#define PDCNET_JSON_IO_HPP

#include "pdcnet/behavior.hpp"
#include "pdcnet/fock.hpp"
#include "pdcnet/ghz.hpp"
#include "pdcnet/lhv.hpp"
#include "pdcnet/network.hpp"
#include "pdcnet/symbolic.hpp"

#include <json.hpp>

#include <string>

namespace pdcnet {

using OrderedJson = nlohmann::ordered_json;

// Sparse state as a list of {occupation, re, im} in lexicographic occupation
// order.
OrderedJson fock_state_to_json(const FockState& state);

OrderedJson evolution_report_to_json(const EvolutionReport& report);

// Scaled-ladder coefficients; the header records the convention
// amplitude = coeff * sqrt(prod occupation[i]!).
OrderedJson symbolic_state_to_json(const SymbolicState& state);

OrderedJson probability_polynomial_to_json(const ProbabilityPolynomial& poly);

OrderedJson behavior_to_json(const Behavior& behavior);
Behavior behavior_from_json(const OrderedJson& j);

template <class T>
OrderedJson lhv_verdict_to_json(const BasicLhvVerdict<T>& verdict);

OrderedJson paradox_to_json(const ParadoxGap& gap, const DegradationReport& degradation);

// Network description file: {parties, g: {re, im}, settings: [{pump, phase}]}.
OrderedJson network_run_to_json(const NetworkSpec& network,
                                const std::vector<PartySetting>& settings);
struct NetworkRun {
    NetworkSpec network;
    std::vector<PartySetting> settings;
};
NetworkRun network_run_from_json(const OrderedJson& j);

// Fixed 12-significant-digit float formatting for CSV emission.
std::string format_number(double v);

} // namespace pdcnet

#endif
