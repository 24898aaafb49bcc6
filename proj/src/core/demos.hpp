#ifndef COMMSPLIT_DEMOS_HPP
#define COMMSPLIT_DEMOS_HPP

#include <cstdint>
#include <string>

namespace commsplit {

/// Rotate |+> onto a marked basis state by evolving under the commutator of
/// two rank-1 projectors.  r_override = 0 lets the planner size the
/// segmentation.  Returns a JSON report.
std::string demo_grover(int n, long long r_override, std::uint64_t seed);

/// Effective y rotation from two non-orthogonal z-ish rotation axes via the
/// symmetrized commutator formula at level p2 (even).  JSON report.
std::string demo_control(double b0, double omega0, double t, int p2);

/// Anticommutator evolution via the ancilla dilation.  JSON report.
std::string demo_anticomm(int dim, double t, int p2, std::uint64_t seed);

/// 2x2 torus stabilizer Hamiltonian: exact commuting factorization plus a
/// two-body simulation of every 4-body factor through the k=3 dilated
/// nested-commutator route, with an error budget of eps split evenly over
/// the factors.  JSON report.
std::string demo_toric(double j, double t, double eps);

/// Error-versus-cost curves on the shared two-operator workload for the
/// requested families ("nestf", "nestgc", "jk").  Returns CSV with
/// family,p2,r,n_exp,error rows; unverified experimental curves are
/// omitted with a warning comment.
std::string compare_families(const std::string& families_csv, int k);

}  // namespace commsplit

#endif
