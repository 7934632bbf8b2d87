#include "confrec/error.hpp"
#include "confrec/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#include <fmt/format.h>

namespace confrec::kernels {

#ifdef CONFREC_HAVE_AVX2
const KernelTable& avx2_kernels();
#endif

namespace {

Isa initial_isa() {
  if (const char* env = std::getenv("CONFREC_ISA")) {
    std::string_view want(env);
    if (want == "scalar") return Isa::scalar;
    if (want == "avx2" && avx2_supported()) return Isa::avx2;
  }
  return avx2_supported() ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& selected() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

void check_sizes(std::size_t expected, std::size_t got) {
  if (expected != got) throw Error(fmt::format("kernel size mismatch: {} vs {}", expected, got));
}

}  // namespace

std::string_view to_string(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool avx2_supported() {
#ifdef CONFREC_HAVE_AVX2
  static const bool ok = __builtin_cpu_supports("avx2");
  return ok;
#else
  return false;
#endif
}

Isa active_isa() { return selected().load(std::memory_order_relaxed); }

void set_isa(Isa isa) {
  if (isa == Isa::avx2 && !avx2_supported()) throw Error("AVX2 kernels are not available on this machine");
  selected().store(isa, std::memory_order_relaxed);
}

const KernelTable* avx2_table() {
#ifdef CONFREC_HAVE_AVX2
  return avx2_supported() ? &avx2_kernels() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active_table() {
  if (active_isa() == Isa::avx2) {
    if (const KernelTable* t = avx2_table()) return *t;
  }
  return scalar_table();
}

void raw_ties(std::span<const double> freq, std::span<const double> dur, double total, std::span<double> out) {
  check_sizes(freq.size(), dur.size());
  check_sizes(freq.size(), out.size());
  active_table().raw_ties(freq.data(), dur.data(), total, out.data(), out.size());
}

void blend(std::span<const double> past, std::span<const double> present, double beta, std::span<double> out) {
  check_sizes(past.size(), present.size());
  check_sizes(past.size(), out.size());
  active_table().blend(past.data(), present.data(), beta, out.data(), out.size());
}

void add(std::span<const double> a, std::span<const double> b, std::span<double> out) {
  check_sizes(a.size(), b.size());
  check_sizes(a.size(), out.size());
  active_table().add(a.data(), b.data(), out.data(), out.size());
}

std::pair<double, double> min_max(std::span<const double> in) {
  double lo = 0.0;
  double hi = 0.0;
  active_table().min_max(in.data(), in.size(), &lo, &hi);
  return {lo, hi};
}

void rescale(std::span<const double> in, double lo, double hi, std::span<double> out) {
  check_sizes(in.size(), out.size());
  active_table().rescale(in.data(), lo, hi, out.data(), out.size());
}

}  // namespace confrec::kernels
