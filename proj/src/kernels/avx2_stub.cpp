#include "lpeg/kernels.hpp"

namespace lpeg::kernels {

const Table* avx2() { return nullptr; }

} // namespace lpeg::kernels
