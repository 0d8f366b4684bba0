#pragma once

#include "nwidth/nystrom.hpp"

namespace nwidth::detail {

/// The Nystrom matrix of `sys` with every entry recomputed in Real on the
/// same nodes. Instantiated for long double and __float128.
template <class Real>
BasicMatrix<Real> assemble_as(const NystromSystem& sys);

} // namespace nwidth::detail
