#pragma once

#include <string>
#include <utility>
#include <vector>

#include "atlas/group/finite_group.hpp"
#include "atlas/tower/tower.hpp"

namespace atlas {

struct AuditDetail {
  int level = 0;  // 0 when the quantity is not tied to a level
  std::string key;
  std::string value;
};

struct AuditResult {
  std::string name;
  bool passed = false;
  std::pair<int, int> levels{0, 0};
  std::vector<AuditDetail> details;
};

// [G_k : Phi(G_k)] constant over the last three levels.
AuditResult frattini_stability_audit(const Tower& t);
// [G_k : G_k'] constant for k >= 2; [M_k : M_k'] strictly increasing for the
// maximal subgroups <x1,A>, <x2,A>, <x1x2,A>; Phi(G_k) = A_k with G_k/A_k
// a Klein four group.
AuditResult wilson_commutator_audit(const Tower& t);
// No rank-one direct summand of (Z/3^k)^2 fixed by A1^(3^r), r <= r_max,
// at the top level; invariant submodules are the 3^j multiples only.
// r is clamped to k-2: A1 = I mod 3, so A1^(3^(k-1)) = I mod 3^k.
AuditResult pirim_irreducibility_audit(const Tower& t, int r_max);
// b_n from alpha^n = a_n + b_n alpha, alpha = 1 + sqrt 5, read off A^n.
AuditResult bn_recurrence_audit(int n);
// t = H x Z_p over one prime: H_k x 1 is a solitary candidate exactly when
// [H_k : H_k'] has stabilized.
AuditResult solitary_criterion_hxz_audit(const Tower& t);
// Candidates lie in C_G(Z) and meet Z trivially; conversely decided rank-1
// nodes of that kind are candidates. Reports n and the algebraic count.
AuditResult virtually_zp_audit(const Tower& t);
// Every subgroup of g1 x g2 round-trips through its Goursat quintuple.
AuditResult goursat_full_audit(const FiniteGroup& g1, const FiniteGroup& g2);

// [H_k : H_k'] for every level of t, used by the H x Z_p criterion.
std::vector<std::uint64_t> abelianization_indices(const Tower& t);
// |S(C_G(Z))'| read off level D-1: subgroups of the centralizer meeting Z
// trivially that lift with equal order into the top-level centralizer.
std::size_t virtually_zp_algebraic_count(const Tower& t);

std::vector<std::string> audit_names();
// Runs a named audit on its stock tower.
AuditResult run_named_audit(const std::string& name, int n = 40);

}  // namespace atlas
