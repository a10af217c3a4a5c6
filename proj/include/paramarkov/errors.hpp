#pragma once

#include <stdexcept>
#include <string>

namespace paramarkov {

// Thrown when an evaluator cannot reach its documented accuracy
// (series term cap hit, quadrature non-convergence, overflow).
class accuracy_error : public std::runtime_error {
public:
    explicit accuracy_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when a scalar function is not defined on the spectrum of a matrix
// argument (e.g. z^nu at a defective zero eigenvalue).
class spectral_error : public std::domain_error {
public:
    explicit spectral_error(const std::string& msg) : std::domain_error(msg) {}
};

// Thrown on structurally invalid sizes (mismatched supports, combinatorial
// guards, grids too coarse for the requested scheme).
class size_error : public std::length_error {
public:
    explicit size_error(const std::string& msg) : std::length_error(msg) {}
};

} // namespace paramarkov
