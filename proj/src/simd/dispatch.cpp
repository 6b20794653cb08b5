#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "kansa/simd.hpp"

namespace kansa::simd {

namespace {

bool cpu_has_avx2() {
#if defined(KANSA_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

const Ops* initial_selection() {
  if (const char* env = std::getenv("KANSA_SIMD")) {
    const std::string want(env);
    if (want == "scalar") return &detail::scalar_ops();
    if (want == "avx2" && available(Isa::Avx2)) return &ops_for(Isa::Avx2);
  }
  return available(Isa::Avx2) ? &ops_for(Isa::Avx2) : &detail::scalar_ops();
}

std::atomic<const Ops*>& current() {
  static std::atomic<const Ops*> table{initial_selection()};
  return table;
}

}  // namespace

bool available(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
      return cpu_has_avx2();
  }
  return false;
}

const Ops& ops_for(Isa isa) {
  if (!available(isa)) throw std::runtime_error("SIMD variant not available on this CPU: " + std::string(isa_name(isa)));
  switch (isa) {
    case Isa::Scalar:
      return detail::scalar_ops();
    case Isa::Avx2:
#if defined(KANSA_HAVE_AVX2)
      return detail::avx2_ops();
#else
      break;
#endif
  }
  throw std::runtime_error("unknown SIMD variant");
}

const Ops& ops() { return *current().load(std::memory_order_acquire); }

void select(Isa isa) { current().store(&ops_for(isa), std::memory_order_release); }

Isa active_isa() { return ops().isa; }

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return "scalar";
    case Isa::Avx2:
      return "avx2";
  }
  return "unknown";
}

}  // namespace kansa::simd
