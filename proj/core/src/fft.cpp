#include "sns/fft.hpp"

#include <fftw3.h>

#include <mutex>

namespace sns {

namespace {
// FFTW plan creation/destruction is not thread safe; execution is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

fftw_complex* as_fftw(std::vector<cplx>& v) {
    return reinterpret_cast<fftw_complex*>(v.data());
}
}  // namespace

struct Workspace::Plans {
    fftw_plan bwd_pad = nullptr;   // coefficients -> padded physical
    fftw_plan fwd_pad = nullptr;   // padded physical -> coefficients
    fftw_plan bwd_grid = nullptr;  // N x N
    fftw_plan fwd_grid = nullptr;
    std::vector<cplx> pad_a, pad_b;    // planning/aliasing buffers
    std::vector<cplx> grid_a, grid_b;
};

Workspace::Workspace(GridSpec grid) : grid_(grid), plans_(std::make_unique<Plans>()) {
    const int n = grid_.modes_per_dim;
    const int np = grid_.padded_modes;
    plans_->pad_a.resize(grid_.padded_size());
    plans_->pad_b.resize(grid_.padded_size());
    plans_->grid_a.resize(grid_.size());
    plans_->grid_b.resize(grid_.size());
    pad_buffers_.resize(4);
    for (auto& b : pad_buffers_) b.resize(grid_.padded_size());

    std::lock_guard<std::mutex> lock(planner_mutex());
    plans_->bwd_pad = fftw_plan_dft_2d(np, np, as_fftw(plans_->pad_a), as_fftw(plans_->pad_b),
                                       FFTW_BACKWARD, FFTW_ESTIMATE);
    plans_->fwd_pad = fftw_plan_dft_2d(np, np, as_fftw(plans_->pad_a), as_fftw(plans_->pad_b),
                                       FFTW_FORWARD, FFTW_ESTIMATE);
    plans_->bwd_grid = fftw_plan_dft_2d(n, n, as_fftw(plans_->grid_a), as_fftw(plans_->grid_b),
                                        FFTW_BACKWARD, FFTW_ESTIMATE);
    plans_->fwd_grid = fftw_plan_dft_2d(n, n, as_fftw(plans_->grid_a), as_fftw(plans_->grid_b),
                                        FFTW_FORWARD, FFTW_ESTIMATE);
}

Workspace::~Workspace() {
    std::lock_guard<std::mutex> lock(planner_mutex());
    fftw_destroy_plan(plans_->bwd_pad);
    fftw_destroy_plan(plans_->fwd_pad);
    fftw_destroy_plan(plans_->bwd_grid);
    fftw_destroy_plan(plans_->fwd_grid);
}

std::vector<cplx>& Workspace::pad_buffer(int which) { return pad_buffers_.at(which); }

void Workspace::eval_padded(const std::vector<cplx>& coeffs, std::vector<cplx>& phys) {
    const int n = grid_.modes_per_dim;
    const int np = grid_.padded_modes;
    auto& in = plans_->pad_a;
    std::fill(in.begin(), in.end(), cplx(0.0, 0.0));
    // Embed band {-N/2+1, ..., N/2-1}^2; Nyquist slots are zero by policy.
    for (int i = 0; i < n; ++i) {
        const int k1 = grid_.wavenumber(i);
        if (k1 == -n / 2) continue;
        const int pi = k1 >= 0 ? k1 : k1 + np;
        for (int j = 0; j < n; ++j) {
            const int k2 = grid_.wavenumber(j);
            if (k2 == -n / 2) continue;
            const int pj = k2 >= 0 ? k2 : k2 + np;
            in[static_cast<size_t>(pi) * np + pj] = coeffs[static_cast<size_t>(i) * n + j];
        }
    }
    phys.resize(grid_.padded_size());
    fftw_execute_dft(plans_->bwd_pad, as_fftw(in), as_fftw(phys));
}

void Workspace::coeffs_from_padded(std::vector<cplx>& phys, std::vector<cplx>& coeffs) {
    const int n = grid_.modes_per_dim;
    const int np = grid_.padded_modes;
    auto& out = plans_->pad_b;
    fftw_execute_dft(plans_->fwd_pad, as_fftw(phys), as_fftw(out));
    coeffs.assign(grid_.size(), cplx(0.0, 0.0));
    const double scale = 1.0 / (static_cast<double>(np) * np);
    for (int i = 0; i < n; ++i) {
        const int k1 = grid_.wavenumber(i);
        if (k1 == -n / 2) continue;
        const int pi = k1 >= 0 ? k1 : k1 + np;
        for (int j = 0; j < n; ++j) {
            const int k2 = grid_.wavenumber(j);
            if (k2 == -n / 2) continue;
            const int pj = k2 >= 0 ? k2 : k2 + np;
            coeffs[static_cast<size_t>(i) * n + j] =
                out[static_cast<size_t>(pi) * np + pj] * scale;
        }
    }
}

void Workspace::eval_grid(const std::vector<cplx>& coeffs, std::vector<cplx>& phys) {
    auto& in = plans_->grid_a;
    std::copy(coeffs.begin(), coeffs.end(), in.begin());
    phys.resize(grid_.size());
    fftw_execute_dft(plans_->bwd_grid, as_fftw(in), as_fftw(phys));
}

void Workspace::coeffs_from_grid(std::vector<cplx>& phys, std::vector<cplx>& coeffs) {
    auto& out = plans_->grid_b;
    fftw_execute_dft(plans_->fwd_grid, as_fftw(phys), as_fftw(out));
    coeffs.resize(grid_.size());
    const int n = grid_.modes_per_dim;
    const double scale = 1.0 / (static_cast<double>(n) * n);
    for (size_t i = 0; i < coeffs.size(); ++i) coeffs[i] = out[i] * scale;
}

}  // namespace sns
