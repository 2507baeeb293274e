#pragma once

#include "thompson/divergence.hpp"

namespace thompson {

// Fills prefix bounds and verdict of a freshly built certificate.
bool verify_fresh(DetourCertificate& c, const ElementBall* ball);
bool verify_fresh_braided(DetourCertificate& c, const BraidedBall* ball);

}  // namespace thompson
