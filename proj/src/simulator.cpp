#include "hyperqaoa/simulator.hpp"

#include "hyperqaoa/error.hpp"
#include "hyperqaoa/kernels.hpp"

#include <cmath>

namespace hyperqaoa {

void AngleSchedule::validate() const {
  if (gammas.size() != betas.size())
    throw InvalidArgument("angle schedule: gammas and betas differ in length");
  if (gammas.empty())
    throw InvalidArgument("angle schedule: depth must be at least 1");
}

StateVector::StateVector(int num_qubits) : n_(num_qubits) {
  if (n_ < 1 || n_ > kMaxQubits)
    throw CapacityError("statevector: qubit count " + std::to_string(n_) +
                        " outside [1, " + std::to_string(kMaxQubits) + "]");
  amps_.resize(std::size_t{1} << n_);
  reset_uniform();
}

void StateVector::reset_uniform() {
  const double a = std::pow(2.0, -0.5 * n_);
  std::fill(amps_.begin(), amps_.end(), amplitude{a, 0.0});
}

double StateVector::norm() const {
  return std::sqrt(kernels::active().norm_squared(amps_.data(), amps_.size()));
}

StateVector initial_state(int num_qubits) { return StateVector(num_qubits); }

namespace {

void check_dims(const StateVector &s, const CostTable &t) {
  if (s.num_qubits() != t.num_qubits())
    throw DimensionError("state has " + std::to_string(s.num_qubits()) +
                         " qubits, Hamiltonian has " +
                         std::to_string(t.num_qubits()));
}

void phase_with(StateVector &state, double gamma, const CostTable &table,
                std::vector<std::complex<double>> &phases) {
  const auto &levels = table.levels();
  phases.resize(levels.size());
  for (std::size_t l = 0; l < levels.size(); ++l)
    phases[l] = {std::cos(gamma * levels[l]), -std::sin(gamma * levels[l])};
  kernels::active().apply_phase(state.amplitudes().data(),
                                table.level_index().data(), phases.data(),
                                state.dimension());
}

} // namespace

void apply_phase(StateVector &state, double gamma, const CostTable &table) {
  check_dims(state, table);
  std::vector<std::complex<double>> phases;
  phase_with(state, gamma, table, phases);
}

void apply_phase(StateVector &state, double gamma, const Hypergraph &h) {
  apply_phase(state, gamma, CostTable(h, kMaxQubits));
}

void apply_mixer(StateVector &state, double beta) {
  kernels::active().apply_mixer(state.amplitudes().data(), state.num_qubits(),
                                std::cos(beta), std::sin(beta));
}

StateVector evolve(const CostTable &table, const AngleSchedule &schedule) {
  schedule.validate();
  StateVector state(table.num_qubits());
  std::vector<std::complex<double>> phases;
  for (std::size_t i = 0; i < schedule.depth(); ++i) {
    phase_with(state, schedule.gammas[i], table, phases);
    apply_mixer(state, schedule.betas[i]);
  }
  return state;
}

StateVector evolve(const Hypergraph &h, const AngleSchedule &schedule) {
  return evolve(CostTable(h, kMaxQubits), schedule);
}

double expectation_energy(const StateVector &state, const CostTable &table) {
  check_dims(state, table);
  return kernels::active().diagonal_expectation(
      state.amplitudes().data(), table.values().data(), state.dimension());
}

double expectation_energy(const StateVector &state, const Hypergraph &h) {
  return expectation_energy(state, CostTable(h, kMaxQubits));
}

double correlator(const StateVector &state, std::span<const Vertex> nodes) {
  if (nodes.empty())
    throw InvalidArgument("correlator: empty vertex set");
  std::uint64_t mask = 0;
  for (Vertex v : nodes) {
    if (v < 0 || v >= state.num_qubits())
      throw InvalidArgument("correlator: vertex " + std::to_string(v) +
                            " out of range");
    mask |= std::uint64_t{1} << v;
  }
  return kernels::active().parity_expectation(state.amplitudes().data(),
                                              state.dimension(), mask);
}

QaoaSimulator::QaoaSimulator(const Hypergraph &h)
    : QaoaSimulator(std::make_shared<const CostTable>(h, kMaxQubits)) {}

QaoaSimulator::QaoaSimulator(std::shared_ptr<const CostTable> table)
    : table_(std::move(table)), state_(table_->num_qubits()) {}

double QaoaSimulator::energy(std::span<const double> gammas,
                             std::span<const double> betas) {
  if (gammas.size() != betas.size() || gammas.empty())
    throw InvalidArgument("energy: gammas and betas must be nonempty and equal length");
  state_.reset_uniform();
  for (std::size_t i = 0; i < gammas.size(); ++i) {
    phase_with(state_, gammas[i], *table_, phase_scratch_);
    apply_mixer(state_, betas[i]);
  }
  return expectation_energy(state_, *table_);
}

double QaoaSimulator::energy(const AngleSchedule &schedule) {
  schedule.validate();
  return energy(schedule.gammas, schedule.betas);
}

} // namespace hyperqaoa
