#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace textspot {

struct DimMismatch : std::runtime_error {
    explicit DimMismatch(const std::string& what) : std::runtime_error(what) {}
};

struct GridPoint {
    int x = 0;
    int y = 0;
};

inline bool operator==(GridPoint a, GridPoint b) { return a.x == b.x && a.y == b.y; }

// Dense float tensor, rank 2 ({H, W}, a map) or rank 3 ({H, W, F}, a
// feature map with the channel axis innermost so each grid point's
// feature vector is contiguous).
class Tensor {
public:
    Tensor() = default;
    Tensor(std::vector<std::uint32_t> dims, std::vector<float> data);

    static Tensor zeros(std::vector<std::uint32_t> dims);

    std::uint8_t rank() const { return static_cast<std::uint8_t>(dims_.size()); }
    const std::vector<std::uint32_t>& dims() const { return dims_; }
    std::uint32_t height() const { return dims_[0]; }
    std::uint32_t width() const { return dims_[1]; }
    std::uint32_t channels() const;

    const std::vector<float>& data() const { return data_; }
    std::vector<float>& data() { return data_; }

    float at(int y, int x) const;
    float& at(int y, int x);
    float at(int y, int x, int c) const;
    float& at(int y, int x, int c);

    // Contiguous feature vector at one grid point (rank 3 only).
    std::span<const float> feature(int y, int x) const;
    std::span<float> feature(int y, int x);

    bool in_bounds(int y, int x) const {
        return y >= 0 && x >= 0 && y < static_cast<int>(dims_[0]) &&
               x < static_cast<int>(dims_[1]);
    }

private:
    std::vector<std::uint32_t> dims_;
    std::vector<float> data_;

    void check_rank(std::uint8_t want) const;
};

}  // namespace textspot
