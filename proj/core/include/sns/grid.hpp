#pragma once

#include <stdexcept>
#include <string>

namespace sns {

/// Square Fourier grid on the torus [0,2pi)^2.
///
/// Retained wavenumbers are the integer lattice {-N/2, ..., N/2-1}^2 stored
/// in standard FFT layout (non-negative frequencies first). Quadratic
/// products are evaluated on a 3N/2 zero-padded grid so that retained-band
/// coefficients of products are alias-free.
///
/// The Nyquist rows/columns (wavenumber component -N/2) have no conjugate
/// partner inside the band; every field constructed by this library keeps
/// them at zero so that spectral differentiation preserves realness.
struct GridSpec {
    int modes_per_dim = 0;  // N
    int padded_modes = 0;   // 3N/2, dealiasing workspace size

    GridSpec() = default;

    explicit GridSpec(int n) : modes_per_dim(n), padded_modes(3 * n / 2) {
        if (n < 4 || n % 2 != 0)
            throw std::invalid_argument("GridSpec: N must be even and >= 4, got " +
                                        std::to_string(n));
    }

    int size() const { return modes_per_dim * modes_per_dim; }
    int padded_size() const { return padded_modes * padded_modes; }

    /// FFT-layout index in [0,N) -> signed wavenumber in [-N/2, N/2).
    int wavenumber(int index) const {
        return index < modes_per_dim / 2 ? index : index - modes_per_dim;
    }

    /// Signed wavenumber -> FFT-layout index.
    int index_of(int k) const { return k >= 0 ? k : k + modes_per_dim; }

    bool is_nyquist(int index) const { return wavenumber(index) == -modes_per_dim / 2; }

    bool operator==(const GridSpec&) const = default;
};

inline void require_same_grid(const GridSpec& a, const GridSpec& b, const char* where) {
    if (!(a == b))
        throw std::invalid_argument(std::string(where) + ": mismatched grids (N=" +
                                    std::to_string(a.modes_per_dim) + " vs N=" +
                                    std::to_string(b.modes_per_dim) + ")");
}

}  // namespace sns
