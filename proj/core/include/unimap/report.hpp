#pragma once

// JSON renderings of certificates and traces. Reals are decimal strings with
// 17 significant digits.

#include <string>

#include "unimap/universality.hpp"

namespace unimap {

std::string format_real(double v);

std::string to_json(const UniversalityCertificate& cert);
std::string to_json(const CertificationFailure& failure);
// `x` is the point in full precision; empty to omit.
std::string to_json(const NestedIntervalTrace& trace, const std::string& x = {});

}  // namespace unimap
