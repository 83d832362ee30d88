#include "kanon/kernels.hpp"

#include "kanon/errors.hpp"

#include <cassert>

namespace kanon::kernels {

namespace scalar {

double dot(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += a[i] * b[i];
    return acc;
}

void axpy(double alpha, const double* x, double* y, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scale(double* x, double alpha, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

void rotate(double* x, double* y, double c, double s, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        double xi = x[i];
        double yi = y[i];
        x[i] = c * xi + s * yi;
        y[i] = c * yi - s * xi;
    }
}

double sum(const double* x, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) acc += x[i];
    return acc;
}

} // namespace scalar

namespace {

struct DispatchTable {
    double (*dot)(const double*, const double*, std::size_t);
    void (*axpy)(double, const double*, double*, std::size_t);
    void (*scale)(double*, double, std::size_t);
    void (*rotate)(double*, double*, double, double, std::size_t);
    double (*sum)(const double*, std::size_t);
    Backend backend;
};

constexpr DispatchTable kScalarTable = {
    &scalar::dot, &scalar::axpy, &scalar::scale, &scalar::rotate, &scalar::sum,
    Backend::scalar,
};

#if defined(__x86_64__) || defined(_M_X64)
constexpr DispatchTable kAvx2Table = {
    &avx2::dot, &avx2::axpy, &avx2::scale, &avx2::rotate, &avx2::sum,
    Backend::avx2,
};

bool cpu_has_avx2() { return __builtin_cpu_supports("avx2"); }
#else
bool cpu_has_avx2() { return false; }
#endif

const DispatchTable& default_table() {
#if defined(__x86_64__) || defined(_M_X64)
    static const DispatchTable* chosen = cpu_has_avx2() ? &kAvx2Table : &kScalarTable;
    return *chosen;
#else
    return kScalarTable;
#endif
}

const DispatchTable*& current_table() {
    static const DispatchTable* table = &default_table();
    return table;
}

} // namespace

Backend active_backend() { return current_table()->backend; }

bool backend_available(Backend b) {
    if (b == Backend::scalar) return true;
    return cpu_has_avx2();
}

void force_backend(Backend b) {
    if (!backend_available(b))
        throw ValidationError("kernel backend " + backend_name(b) + " unavailable on this CPU");
    switch (b) {
    case Backend::scalar:
        current_table() = &kScalarTable;
        break;
    case Backend::avx2:
#if defined(__x86_64__) || defined(_M_X64)
        current_table() = &kAvx2Table;
#endif
        break;
    }
}

std::string backend_name(Backend b) {
    switch (b) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
    }
    return "?";
}

double dot(std::span<const double> a, std::span<const double> b) {
    assert(a.size() == b.size());
    return current_table()->dot(a.data(), b.data(), a.size());
}

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
    assert(x.size() == y.size());
    current_table()->axpy(alpha, x.data(), y.data(), x.size());
}

void scale(std::span<double> x, double alpha) {
    current_table()->scale(x.data(), alpha, x.size());
}

void rotate(std::span<double> x, std::span<double> y, double c, double s) {
    assert(x.size() == y.size());
    current_table()->rotate(x.data(), y.data(), c, s, x.size());
}

double sum(std::span<const double> x) {
    return current_table()->sum(x.data(), x.size());
}

} // namespace kanon::kernels
