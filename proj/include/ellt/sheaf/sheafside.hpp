#pragma once

#include <set>
#include <vector>

#include "ellt/ea/eatheory.hpp"

namespace ellt::sheaf {

using curve::CycCache;
using curve::FuncElt;
using ea::EATheory;
using tmodel::ASObject;
using tmodel::Representation;
using tmodel::TorsionDivisor;

// U_pi: the curve minus the points whose exact order lies in pi.
struct OpenSet {
  std::set<long> pi;
  friend bool operator==(const OpenSet& a, const OpenSet& b) = default;
};

// Poles beyond D allowed up to cap on each removed class.
TorsionDivisor section_divisor(const TorsionDivisor& d, const OpenSet& open, long cap);

struct SectionWindow {
  OpenSet open;
  TorsionDivisor divisor;
  long cap = 0;
  std::vector<FuncElt> basis;  // rr_basis(section_divisor(...))
};

SectionWindow sections(const CycCache& cache, const TorsionDivisor& d, const OpenSet& open, long cap);

struct ModuleWindow {
  TorsionDivisor window;  // the divisor whose H^0 the kernel is
  std::vector<FuncElt> basis;
  tmodel::StableResult stable;
};

// Kernel of the c^0 slice of q with the rows of the removed classes dropped.
// The object must sit on the elliptic backend.
ModuleWindow ma_eval(const ASObject& object, const OpenSet& open, long cap);

// The rigid even object of O(D): torsion windows start at D + D_w.
ASObject sa_build(const EATheory& theory, const TorsionDivisor& d);

// Exactness of 0 -> S(U_{pi cap pi'}) -> S(U_pi) + S(U_pi') -> S(U_{pi cup pi'}).
bool glue_check(const CycCache& cache, const TorsionDivisor& d, const std::set<long>& pi,
                const std::set<long>& pi2, long cap);

// M_A(S_A(O(D(V)))) against the sections of O(D(V)) on each open and cap,
// and S_A(O(D(V))) against Sigma^{dim V} EA.
bool roundtrip(const EATheory& theory, const Representation& v, const std::vector<OpenSet>& opens,
               const std::vector<long>& caps);

nlohmann::ordered_json sections_report(const SectionWindow& s);

}  // namespace ellt::sheaf
