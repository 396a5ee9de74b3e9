#pragma once

// Fedder's criterion for hypersurfaces: F_p[x_1..x_m]/(f) is F-pure at the
// homogeneous maximal ideal m iff f^(p-1) is not in m^[p] = (x_1^p, ..., x_m^p).

#include <cstdint>
#include <optional>

#include "diagvar/polyring.hpp"

namespace diagvar {

struct FedderVerdict {
  bool fpure = false;
  /// Grevlex-leading monomial of the reduced power; present iff fpure.
  std::optional<Monomial> witness;
  std::uint32_t p = 0;
  std::size_t var_count = 0;
  /// True when the verdict came from the square-free single-term certificate.
  bool squarefree_certificate = false;
};

/// f reduced into F_p with every monomial having an exponent >= p deleted.
MvPolynomial bracket_reduce(const MvPolynomial& f, std::uint32_t p);

/// Computes f^(p-1) mod m^[p] with eager deletion. Throws Error on f == 0
/// (including f vanishing mod p).
FedderVerdict fedder_check(const MvPolynomial& f, std::uint32_t p);

/// True iff f is a single square-free term with coefficient +-1. Such an f
/// defines a Stanley-Reisner hypersurface, F-pure in every characteristic.
bool squarefree_all_variables_shortcut(const MvPolynomial& f);

nlohmann::json to_json(const FedderVerdict& v);

}  // namespace diagvar
