#pragma once

#include <memory>
#include <vector>

#include "ans/grid.hpp"
#include "ans/kernels.hpp"

namespace ans {

/// Complex-to-complex 2D FFT pair for an N x N grid. forward() analyzes a
/// physical-space array into coefficients of e^{i k·x} (including the 1/N^2
/// factor); backward() synthesizes (no scaling). Instances are shared and
/// immutable after construction; execution on caller-owned buffers is
/// thread-safe.
class Transform {
public:
    explicit Transform(int N);
    ~Transform();
    Transform(const Transform&) = delete;
    Transform& operator=(const Transform&) = delete;

    int N() const { return n_; }
    void forward(const kernels::cplx* phys, kernels::cplx* spec) const;
    void backward(const kernels::cplx* spec, kernels::cplx* phys) const;

private:
    int n_;
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

/// Shared transform for the given N (plans are built once per size).
const Transform& get_transform(int N);

/// Synthesizes an N-grid spectrum onto a finer M x M physical grid by zero
/// padding (M >= N, and M - N modes of margin leaves the Nyquist lines
/// empty). Used for sup-norm evaluation between collocation points.
void padded_synthesis(const Grid& g, const kernels::cplx* spec, int M,
                      std::vector<kernels::cplx>& phys);

}  // namespace ans
