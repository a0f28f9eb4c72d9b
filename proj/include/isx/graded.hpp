#pragma once

// Graded vector spaces over Q, degreewise linear maps with a fixed degree
// shift, and bilinear pairings of a fixed total degree. Blocks are stored
// sparsely by degree; an absent block is zero.

#include "isx/matrix.hpp"

#include <map>
#include <stdexcept>

namespace isx {

class GradedSpace {
public:
    GradedSpace() = default;

    std::size_t dim(int degree) const {
        const auto it = dims_.find(degree);
        return it == dims_.end() ? 0 : it->second;
    }
    void set_dim(int degree, std::size_t d) {
        if (d == 0)
            dims_.erase(degree);
        else
            dims_[degree] = d;
    }
    std::size_t total_dim() const {
        std::size_t t = 0;
        for (const auto& [deg, d] : dims_) t += d;
        return t;
    }
    bool empty() const { return dims_.empty(); }
    int min_degree() const { return dims_.empty() ? 0 : dims_.begin()->first; }
    int max_degree() const { return dims_.empty() ? 0 : dims_.rbegin()->first; }
    const std::map<int, std::size_t>& dims() const { return dims_; }

    bool operator==(const GradedSpace& o) const { return dims_ == o.dims_; }
    bool operator!=(const GradedSpace& o) const { return !(*this == o); }

private:
    std::map<int, std::size_t> dims_;
};

// A degreewise map src -> dst raising degree by `shift` (usually 0 or -1).
// The block at degree d has shape dst.dim(d + shift) x src.dim(d).
class GradedMap {
public:
    GradedMap() = default;
    GradedMap(GradedSpace src, GradedSpace dst, int shift)
        : src_(std::move(src)), dst_(std::move(dst)), shift_(shift) {}

    static GradedMap zero(GradedSpace src, GradedSpace dst, int shift) {
        return GradedMap(std::move(src), std::move(dst), shift);
    }
    static GradedMap identity(const GradedSpace& s) {
        GradedMap m(s, s, 0);
        for (const auto& [deg, d] : s.dims()) m.set_block(deg, Mat::identity(d));
        return m;
    }

    const GradedSpace& src() const { return src_; }
    const GradedSpace& dst() const { return dst_; }
    int shift() const { return shift_; }

    Mat block(int degree) const {
        const auto it = blocks_.find(degree);
        if (it != blocks_.end()) return it->second;
        return Mat(dst_.dim(degree + shift_), src_.dim(degree));
    }
    void set_block(int degree, const Mat& m) {
        if (m.rows() != dst_.dim(degree + shift_) || m.cols() != src_.dim(degree))
            throw std::invalid_argument("graded map block at degree " + std::to_string(degree) +
                                        " has shape " + m.shape() + ", expected " +
                                        std::to_string(dst_.dim(degree + shift_)) + "x" +
                                        std::to_string(src_.dim(degree)));
        if (m.is_zero())
            blocks_.erase(degree);
        else
            blocks_[degree] = m;
    }
    const std::map<int, Mat>& stored_blocks() const { return blocks_; }

    // Degrees where either the block could be nonzero or a comparison makes
    // sense: all degrees with a nonzero source dimension.
    std::map<int, Mat> all_blocks() const {
        std::map<int, Mat> out;
        for (const auto& [deg, d] : src_.dims()) out.emplace(deg, block(deg));
        return out;
    }

    bool is_zero() const {
        for (const auto& [deg, b] : blocks_)
            if (!b.is_zero()) return false;
        return true;
    }

    bool operator==(const GradedMap& o) const {
        if (src_ != o.src_ || dst_ != o.dst_ || shift_ != o.shift_) return false;
        for (const auto& [deg, d] : src_.dims())
            if (block(deg) != o.block(deg)) return false;
        return true;
    }
    bool operator!=(const GradedMap& o) const { return !(*this == o); }

    Mat apply(int degree, const Mat& v) const { return block(degree) * v; }

    GradedMap operator+(const GradedMap& o) const {
        if (src_ != o.src_ || dst_ != o.dst_ || shift_ != o.shift_)
            throw std::invalid_argument("graded map sum mismatch");
        GradedMap r(src_, dst_, shift_);
        for (const auto& [deg, d] : src_.dims()) r.set_block(deg, block(deg) + o.block(deg));
        return r;
    }
    GradedMap operator-() const {
        GradedMap r(src_, dst_, shift_);
        for (const auto& [deg, b] : blocks_) r.set_block(deg, -b);
        return r;
    }

private:
    GradedSpace src_, dst_;
    int shift_ = 0;
    std::map<int, Mat> blocks_;
};

// g after f; shifts add.
inline GradedMap compose(const GradedMap& g, const GradedMap& f) {
    if (g.src() != f.dst()) throw std::invalid_argument("compose: middle spaces differ");
    GradedMap r(f.src(), g.dst(), f.shift() + g.shift());
    for (const auto& [deg, d] : f.src().dims())
        r.set_block(deg, g.block(deg + f.shift()) * f.block(deg));
    return r;
}

// Bilinear pairing of total degree `total`: the block at degree d has shape
// left.dim(d) x right.dim(total - d) and the value on (x, y) is x^T block y.
class GradedPairing {
public:
    GradedPairing() = default;
    GradedPairing(GradedSpace left, GradedSpace right, int total)
        : left_(std::move(left)), right_(std::move(right)), total_(total) {}

    const GradedSpace& left() const { return left_; }
    const GradedSpace& right() const { return right_; }
    int total() const { return total_; }

    Mat block(int degree) const {
        const auto it = blocks_.find(degree);
        if (it != blocks_.end()) return it->second;
        return Mat(left_.dim(degree), right_.dim(total_ - degree));
    }
    void set_block(int degree, const Mat& m) {
        if (m.rows() != left_.dim(degree) || m.cols() != right_.dim(total_ - degree))
            throw std::invalid_argument("pairing block at degree " + std::to_string(degree) +
                                        " has shape " + m.shape() + ", expected " +
                                        std::to_string(left_.dim(degree)) + "x" +
                                        std::to_string(right_.dim(total_ - degree)));
        if (m.is_zero())
            blocks_.erase(degree);
        else
            blocks_[degree] = m;
    }
    const std::map<int, Mat>& stored_blocks() const { return blocks_; }

    Rational value(int degree, const Mat& x, const Mat& y) const {
        const Mat v = x.transpose() * block(degree) * y;
        return v(0, 0);
    }

    // Every block square and invertible (trivially true at empty degrees).
    bool nondegenerate() const {
        for (const auto& [deg, d] : left_.dims()) {
            const Mat b = block(deg);
            if (b.rows() != b.cols() || !is_invertible(b)) return false;
        }
        for (const auto& [deg, d] : right_.dims())
            if (left_.dim(total_ - deg) != d) return false;
        return true;
    }

    bool operator==(const GradedPairing& o) const {
        if (left_ != o.left_ || right_ != o.right_ || total_ != o.total_) return false;
        for (const auto& [deg, d] : left_.dims())
            if (block(deg) != o.block(deg)) return false;
        return true;
    }
    bool operator!=(const GradedPairing& o) const { return !(*this == o); }

private:
    GradedSpace left_, right_;
    int total_ = 0;
    std::map<int, Mat> blocks_;
};

}  // namespace isx
