#pragma once

namespace witten {

// Forward-mode dual number; nests for higher derivatives.
template <class T>
struct Dual {
    T v{};
    T d{};
    Dual() = default;
    Dual(double x) : v(x), d(0.0) {}
    Dual(T value, T deriv) : v(value), d(deriv) {}
};

template <class T>
Dual<T> operator+(const Dual<T>& a, const Dual<T>& b) { return {a.v + b.v, a.d + b.d}; }
template <class T>
Dual<T> operator-(const Dual<T>& a, const Dual<T>& b) { return {a.v - b.v, a.d - b.d}; }
template <class T>
Dual<T> operator-(const Dual<T>& a) { return {T(0.0) - a.v, T(0.0) - a.d}; }
template <class T>
Dual<T> operator*(const Dual<T>& a, const Dual<T>& b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
template <class T>
Dual<T> operator/(const Dual<T>& a, const Dual<T>& b) {
    T inv = T(1.0) / b.v;
    return {a.v * inv, (a.d * b.v - a.v * b.d) * inv * inv};
}
template <class T>
Dual<T> operator*(double c, const Dual<T>& a) { return {T(c) * a.v, T(c) * a.d}; }

inline double primal(double x) { return x; }
template <class T>
double primal(const Dual<T>& x) { return primal(x.v); }

// Apply a smooth scalar function given by its derivative oracle fn(x, k).
template <class Fn>
double apply_smooth(const Fn& fn, double x, int k = 0) { return fn(x, k); }
template <class Fn, class T>
Dual<T> apply_smooth(const Fn& fn, const Dual<T>& x, int k = 0) {
    return {apply_smooth(fn, x.v, k), apply_smooth(fn, x.v, k + 1) * x.d};
}

}  // namespace witten
