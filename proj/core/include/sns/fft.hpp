#pragma once

#include <complex>
#include <memory>
#include <vector>

#include "sns/grid.hpp"

namespace sns {

using cplx = std::complex<double>;

/// Per-trajectory FFT scratch space.
///
/// Owns FFTW plans and buffers for the retained N x N grid and the 3N/2
/// dealiasing grid. Coefficient convention: u(x) = sum_xi uhat(xi) e^{i xi.x},
/// so the backward (unnormalized) transform evaluates the field on grid
/// points and the forward transform divided by the grid size recovers
/// coefficients. Plans use FFTW_ESTIMATE so the chosen algorithm, and hence
/// the rounding of results, is identical from run to run.
///
/// Not thread safe: use one Workspace per thread/trajectory.
class Workspace {
public:
    explicit Workspace(GridSpec grid);
    ~Workspace();

    Workspace(const Workspace&) = delete;
    Workspace& operator=(const Workspace&) = delete;

    const GridSpec& grid() const { return grid_; }

    /// Evaluate retained-band coefficients on the padded physical grid.
    /// Output has padded_size() complex values (imaginary parts are rounding
    /// noise for Hermitian input).
    void eval_padded(const std::vector<cplx>& coeffs, std::vector<cplx>& phys);

    /// Forward transform from the padded physical grid, truncated back to the
    /// retained band. Nyquist slots of the result are set to zero.
    void coeffs_from_padded(std::vector<cplx>& phys, std::vector<cplx>& coeffs);

    /// Same-size (N x N) transforms, used for snapshots and quadrature.
    void eval_grid(const std::vector<cplx>& coeffs, std::vector<cplx>& phys);
    void coeffs_from_grid(std::vector<cplx>& phys, std::vector<cplx>& coeffs);

    /// Scratch buffers sized for the padded grid, reused across calls.
    std::vector<cplx>& pad_buffer(int which);

private:
    struct Plans;
    GridSpec grid_;
    std::unique_ptr<Plans> plans_;
    std::vector<std::vector<cplx>> pad_buffers_;
};

}  // namespace sns
