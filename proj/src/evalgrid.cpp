#include "hkbound/evalgrid.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace hk {

EvalGrid::EvalGrid(FieldPtr field, int N, int maxdeg)
    : field_(std::move(field)), N_(N), maxdeg_(maxdeg), stride_(static_cast<size_t>(N) + 1) {
    const auto pts = enumerate_points(N_, field_);
    npts_ = pts.size();
    coords_.resize(npts_ * stride_);
    powers_.resize(npts_ * stride_ * (static_cast<size_t>(maxdeg_) + 1));
    for (size_t i = 0; i < npts_; ++i) {
        for (size_t j = 0; j < stride_; ++j) {
            const uint32_t c = pts[i].coords[j];
            coords_[i * stride_ + j] = c;
            uint32_t acc = 1;
            for (int e = 0; e <= maxdeg_; ++e) {
                powers_[(i * stride_ + j) * (static_cast<size_t>(maxdeg_) + 1) + static_cast<size_t>(e)] = acc;
                acc = field_->mul(acc, c);
            }
        }
    }
}

uint32_t EvalGrid::eval(const MultiPoly& F, size_t pt) const {
    uint32_t total = 0;
    const FieldSpec& f = *field_;
    for (const auto& t : F.terms()) {
        uint32_t v = t.coeff;
        for (int j = 0; j <= N_ && v; ++j) {
            const uint8_t e = t.mono.e[static_cast<size_t>(j)];
            if (e) v = f.mul(v, power(pt, j, e));
        }
        total = f.add(total, v);
    }
    return total;
}

ProjPoint EvalGrid::point(size_t pt) const {
    std::vector<uint32_t> v(coords(pt), coords(pt) + stride_);
    return ProjPoint::make(field_, std::move(v));
}

std::shared_ptr<const EvalGrid> eval_grid(const FieldPtr& field, int N, int maxdeg) {
    static std::mutex mu;
    static std::map<std::pair<std::string, int>, std::shared_ptr<const EvalGrid>> grids;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(field->signature(), N);
    auto it = grids.find(key);
    if (it == grids.end() || it->second->maxdeg() < maxdeg) {
        auto grid = std::make_shared<const EvalGrid>(field, N, std::max(maxdeg, 8));
        if (it == grids.end())
            it = grids.emplace(key, std::move(grid)).first;
        else
            it->second = std::move(grid);
    }
    return it->second;
}

} // namespace hk
