#include "tedfem/state.hpp"

namespace tedfem {

BaseState BaseState::reference(std::size_t n_nodes, std::size_t n_elem, std::size_t n_qp,
                               double temperature) {
  BaseState s;
  s.u1.assign(n_nodes, 0.0);
  s.T1.assign(n_nodes, temperature);
  s.S1_qp.assign(n_elem, std::vector<double>(n_qp, 0.0));
  s.reactions.assign(n_nodes, 0.0);
  s.boundary_heat.assign(n_nodes, 0.0);
  s.converged = true;
  return s;
}

}  // namespace tedfem
