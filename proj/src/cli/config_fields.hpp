#pragma once

// Field list shared by JSON serialization and flag parsing.
#define SEMICLASS_CONFIG_FIELDS(X) \
  X(map)                           \
  X(a)                             \
  X(b)                             \
  X(c)                             \
  X(d)                             \
  X(k)                             \
  X(T)                             \
  X(potential)                     \
  X(N)                             \
  X(N_to)                          \
  X(Ns)                            \
  X(N_max)                         \
  X(t)                             \
  X(t_max)                         \
  X(grid)                          \
  X(half_traces)                   \
  X(phase_bits)                    \
  X(amplitude_bits)                \
  X(compare_bits)                  \
  X(bits)                          \
  X(readout)                       \
  X(shots)                         \
  X(seed)                          \
  X(input)                         \
  X(eigen_index)                   \
  X(inputs)                        \
  X(out)                           \
  X(summary)
