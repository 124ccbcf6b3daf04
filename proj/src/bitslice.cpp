#include "hkbound/bitslice.hpp"

#include <bit>
#include <map>
#include <mutex>

namespace hk {

F2Grid::F2Grid(int N) : N_(N) {
    const auto pts = enumerate_points(N, FieldSpec::prime(2));
    npts_ = pts.size();
    words_ = (npts_ + 63) / 64;
    pts_.reserve(npts_);
    for (const auto& p : pts) {
        std::vector<uint8_t> v(p.coords.begin(), p.coords.end());
        pts_.push_back(std::move(v));
    }
}

std::vector<uint64_t> F2Grid::monomial_mask(const Monomial& m) const {
    std::vector<uint64_t> mask(words_, 0);
    for (size_t i = 0; i < npts_; ++i) {
        uint8_t v = 1;
        for (int j = 0; j <= N_; ++j)
            if (m.e[static_cast<size_t>(j)] && pts_[i][static_cast<size_t>(j)] == 0) {
                v = 0;
                break;
            }
        if (v) mask[i >> 6] |= (1ull << (i & 63));
    }
    return mask;
}

std::vector<uint64_t> F2Grid::value_mask(const MultiPoly& F) const {
    if (F.nvars() != N_ + 1) throw PreconditionError("variable count does not match grid");
    std::vector<uint64_t> acc(words_, 0);
    for (const auto& t : F.terms()) {
        auto m = monomial_mask(t.mono);
        for (size_t w = 0; w < words_; ++w) acc[w] ^= m[w];
    }
    return acc;
}

size_t F2Grid::count_zeros(const std::vector<uint64_t>& mask) const {
    size_t nonzero = 0;
    for (uint64_t w : mask) nonzero += static_cast<size_t>(std::popcount(w));
    return npts_ - nonzero;
}

int64_t F2Grid::count_points(const MultiPoly& F) const {
    return static_cast<int64_t>(count_zeros(value_mask(F)));
}

const F2Grid& f2_grid(int N) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<F2Grid>> grids;
    std::lock_guard<std::mutex> lock(mu);
    auto it = grids.find(N);
    if (it == grids.end()) it = grids.emplace(N, std::make_unique<F2Grid>(N)).first;
    return *it->second;
}

int64_t bitsliced_point_count(const MultiPoly& F) {
    if (F.field()->order() != 2) throw PreconditionError("bitsliced path requires F_2");
    return f2_grid(F.nvars() - 1).count_points(F);
}

} // namespace hk
