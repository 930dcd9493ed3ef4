#ifndef MOP_MOP_HPP
#define MOP_MOP_HPP

// Multiple orthogonal polynomials, Hermite-Pade approximation, and the
// structural identities connecting them. Header-only; see README.md.

#include "mop/apery.hpp"
#include "mop/errors.hpp"
#include "mop/hermite_pade.hpp"
#include "mop/json_io.hpp"
#include "mop/kernel.hpp"
#include "mop/matrix.hpp"
#include "mop/measures.hpp"
#include "mop/mopcore.hpp"
#include "mop/polynomial.hpp"
#include "mop/roots.hpp"
#include "mop/scalars.hpp"
#include "mop/series.hpp"
#include "mop/zeros.hpp"

namespace mop {
inline constexpr const char *version_string = "0.1.0";
}

#endif // MOP_MOP_HPP
