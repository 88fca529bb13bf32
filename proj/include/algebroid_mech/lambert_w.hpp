#pragma once

namespace algebroid_mech
{

/// Principal branch W0 of the Lambert W function, W(z) e^{W(z)} = z, by Halley iteration.
/// Throws DomainError for z < -1/e and NumericFailure when 50 iterations do not reach
/// a relative step of 1e-12.
double lambert_w0(double z);

}  // namespace algebroid_mech
