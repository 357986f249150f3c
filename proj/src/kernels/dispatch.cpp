#include <atomic>
#include <stdexcept>

#include "lpeg/kernels.hpp"

namespace lpeg::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

std::atomic<const Table*> g_active{nullptr};
std::atomic<Isa> g_isa{Isa::Scalar};

} // namespace

bool isa_available(Isa isa) {
    if (isa == Isa::Scalar) return true;
    return avx2() != nullptr && cpu_has_avx2();
}

const Table& active() {
    const Table* t = g_active.load(std::memory_order_acquire);
    if (t == nullptr) {
        force_isa(isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar);
        t = g_active.load(std::memory_order_acquire);
    }
    return *t;
}

Isa active_isa() {
    active();
    return g_isa.load();
}

void force_isa(Isa isa) {
    if (!isa_available(isa)) throw std::runtime_error("instruction set not available on this machine");
    g_isa.store(isa);
    g_active.store(isa == Isa::Avx2 ? avx2() : &scalar(), std::memory_order_release);
}

} // namespace lpeg::kernels
