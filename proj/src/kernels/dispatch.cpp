#include <atomic>
#include <cstdlib>
#include <string>

#include "symtaper/kernels.hpp"

namespace symtaper::simd {

#if SYMTAPER_WITH_AVX2
const KernelTable& avx2_kernel_table();
#endif

namespace {

bool cpu_has_avx2() {
#if SYMTAPER_WITH_AVX2 && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma") && __builtin_cpu_supports("popcnt");
#else
  return false;
#endif
}

const KernelTable* initial_table() {
  const KernelTable* best = avx2_kernels();
  if (!best) best = &scalar_kernels();
  if (const char* env = std::getenv("SYMTAPER_SIMD")) {
    const std::string want(env);
    for (const auto* t : available_kernels())
      if (want == t->name) return t;
  }
  return best;
}

std::atomic<const KernelTable*>& active_slot() {
  static std::atomic<const KernelTable*> slot{initial_table()};
  return slot;
}

}  // namespace

const KernelTable* avx2_kernels() {
#if SYMTAPER_WITH_AVX2
  static const bool ok = cpu_has_avx2();
  return ok ? &avx2_kernel_table() : nullptr;
#else
  return nullptr;
#endif
}

std::vector<const KernelTable*> available_kernels() {
  std::vector<const KernelTable*> out{&scalar_kernels()};
  if (const auto* a = avx2_kernels()) out.push_back(a);
  return out;
}

const KernelTable& active_kernels() { return *active_slot().load(std::memory_order_acquire); }

bool select_kernels(std::string_view name) {
  for (const auto* t : available_kernels())
    if (name == t->name) {
      active_slot().store(t, std::memory_order_release);
      return true;
    }
  return false;
}

}  // namespace symtaper::simd
