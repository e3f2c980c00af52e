#pragma once

namespace eqp::defaults {

// Absolute tolerance for binary64 equality throughout the library.
inline constexpr double tol = 1e-9;

// Row/column sums of doubly stochastic matrices.
inline constexpr double ds_tol = 1e-8;

// Entries with |x| below this are treated as structural zeros; entries
// above -nonneg_eps count as nonnegative.
inline constexpr double support_eps = 1e-12;
inline constexpr double nonneg_eps = 1e-12;

inline constexpr double sinkhorn_tol = 1e-10;
inline constexpr int sinkhorn_max_iter = 10000;

inline constexpr double perron_tol = 1e-12;
inline constexpr int perron_max_iter = 200000;

inline constexpr double pst_tol = 1e-6;

inline constexpr double meet_tol = 1e-12;
inline constexpr int meet_max_iter = 10000;

inline constexpr int enumerate_cap = 12;

}  // namespace eqp::defaults
