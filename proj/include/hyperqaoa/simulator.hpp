#pragma once

#include "hyperqaoa/cost.hpp"
#include "hyperqaoa/hypergraph.hpp"

#include <complex>
#include <memory>
#include <cstddef>
#include <span>
#include <vector>

namespace hyperqaoa {

inline constexpr int kMaxQubits = 26;

// Mixer convention used everywhere: B = -sum_i X_i, so exp(-i*beta*B) is
// exp(+i*beta*X) on every qubit. For an isolated one-vertex term this gives
// <Z> = -sin(2 beta) sin(2 gamma w).
struct AngleSchedule {
  std::vector<double> gammas;
  std::vector<double> betas;

  std::size_t depth() const noexcept { return gammas.size(); }
  void validate() const;

  bool operator==(const AngleSchedule &) const = default;
};

class StateVector {
public:
  using amplitude = std::complex<double>;

  explicit StateVector(int num_qubits);

  int num_qubits() const noexcept { return n_; }
  std::size_t dimension() const noexcept { return amps_.size(); }

  std::span<amplitude> amplitudes() noexcept { return amps_; }
  std::span<const amplitude> amplitudes() const noexcept { return amps_; }
  amplitude operator[](std::size_t z) const { return amps_[z]; }

  double norm() const;

  // Back to |+>^n without reallocating.
  void reset_uniform();

private:
  int n_;
  std::vector<amplitude> amps_;
};

StateVector initial_state(int num_qubits);

// amplitude[z] *= exp(-i * gamma * C(z))
void apply_phase(StateVector &state, double gamma, const CostTable &table);
void apply_phase(StateVector &state, double gamma, const Hypergraph &h);

void apply_mixer(StateVector &state, double beta);

StateVector evolve(const CostTable &table, const AngleSchedule &schedule);
StateVector evolve(const Hypergraph &h, const AngleSchedule &schedule);

double expectation_energy(const StateVector &state, const CostTable &table);
double expectation_energy(const StateVector &state, const Hypergraph &h);

// <prod_{j in Q} Z_j>
double correlator(const StateVector &state, std::span<const Vertex> nodes);

// Shares one read-only cost table and owns one scratch state, so repeated
// energy evaluations (the optimizer's inner loop) allocate nothing. Copies
// share the table and get their own state, one per worker thread.
class QaoaSimulator {
public:
  explicit QaoaSimulator(const Hypergraph &h);
  explicit QaoaSimulator(std::shared_ptr<const CostTable> table);

  const CostTable &table() const noexcept { return *table_; }
  int num_qubits() const noexcept { return table_->num_qubits(); }

  double energy(const AngleSchedule &schedule);
  double energy(std::span<const double> gammas, std::span<const double> betas);

  const StateVector &state() const noexcept { return state_; }

private:
  std::shared_ptr<const CostTable> table_;
  StateVector state_;
  std::vector<std::complex<double>> phase_scratch_;
};

} // namespace hyperqaoa
