#pragma once

#include "semiclass/classical/map_model.hpp"
#include "semiclass/quantum/unitary.hpp"

namespace semiclass::quantum {

/// Requires t12 != 0 and the checkerboard parity condition.
UnitaryMatrix quantize_cat(const classical::CatMatrix& m, int N);

/// Requires N even and >= 2.
UnitaryMatrix quantize_baker(int N);

/// Kick then free rotation on the 2 pi torus with hbar = 2 pi / N.
UnitaryMatrix quantize_kicked(const classical::MapModel& model, int N);

/// Dispatches on the model kind.
UnitaryMatrix quantize(const classical::MapModel& model, int N);

/// Whether quantize(model, N) is defined (baker needs even N).
bool quantization_defined(const classical::MapModel& model, int N);

}  // namespace semiclass::quantum
