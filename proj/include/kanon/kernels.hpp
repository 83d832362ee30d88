#ifndef KANON_KERNELS_HPP
#define KANON_KERNELS_HPP

#include <cstddef>
#include <span>
#include <string>

// Dense double-precision kernels backing the simplex pivots and the
// eigensolvers. A scalar reference implementation always exists; on x86-64
// an AVX2 variant is compiled alongside and picked at startup when the CPU
// supports it. Tests force each backend and cross-check results.
namespace kanon::kernels {

enum class Backend { scalar, avx2 };

/// Backend currently bound to the dispatch table.
Backend active_backend();

/// True when the named backend can run on this machine.
bool backend_available(Backend b);

/// Rebind the dispatch table (used by the equivalence tests).
/// Throws ValidationError if the backend is unavailable.
void force_backend(Backend b);

std::string backend_name(Backend b);

/// sum_i a[i] * b[i]
double dot(std::span<const double> a, std::span<const double> b);

/// y += alpha * x
void axpy(double alpha, std::span<const double> x, std::span<double> y);

/// x *= alpha
void scale(std::span<double> x, double alpha);

/// Plane rotation: (x, y) <- (c*x + s*y, c*y - s*x), applied element-wise.
void rotate(std::span<double> x, std::span<double> y, double c, double s);

/// sum_i x[i]
double sum(std::span<const double> x);

// Raw entry points, exposed so the dispatcher and the tests can name them.
namespace scalar {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void scale(double* x, double alpha, std::size_t n);
void rotate(double* x, double* y, double c, double s, std::size_t n);
double sum(const double* x, std::size_t n);
} // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void scale(double* x, double alpha, std::size_t n);
void rotate(double* x, double* y, double c, double s, std::size_t n);
double sum(const double* x, std::size_t n);
} // namespace avx2
#endif

} // namespace kanon::kernels

#endif
