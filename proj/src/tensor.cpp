#include "textspot/tensor.hpp"

#include <numeric>

namespace textspot {

Tensor::Tensor(std::vector<std::uint32_t> dims, std::vector<float> data)
    : dims_(std::move(dims)), data_(std::move(data)) {
    if (dims_.size() != 2 && dims_.size() != 3) {
        throw DimMismatch("tensor rank must be 2 or 3, got " + std::to_string(dims_.size()));
    }
    std::size_t want = 1;
    for (std::uint32_t d : dims_) want *= d;
    if (want != data_.size()) {
        throw DimMismatch("tensor data size " + std::to_string(data_.size()) +
                          " does not match dims product " + std::to_string(want));
    }
}

Tensor Tensor::zeros(std::vector<std::uint32_t> dims) {
    std::size_t n = 1;
    for (std::uint32_t d : dims) n *= d;
    return Tensor(std::move(dims), std::vector<float>(n, 0.0f));
}

std::uint32_t Tensor::channels() const {
    check_rank(3);
    return dims_[2];
}

void Tensor::check_rank(std::uint8_t want) const {
    if (rank() != want) {
        throw DimMismatch("expected rank " + std::to_string(want) + ", got " +
                          std::to_string(rank()));
    }
}

float Tensor::at(int y, int x) const {
    check_rank(2);
    return data_[static_cast<std::size_t>(y) * dims_[1] + x];
}

float& Tensor::at(int y, int x) {
    check_rank(2);
    return data_[static_cast<std::size_t>(y) * dims_[1] + x];
}

float Tensor::at(int y, int x, int c) const {
    check_rank(3);
    return data_[(static_cast<std::size_t>(y) * dims_[1] + x) * dims_[2] + c];
}

float& Tensor::at(int y, int x, int c) {
    check_rank(3);
    return data_[(static_cast<std::size_t>(y) * dims_[1] + x) * dims_[2] + c];
}

std::span<const float> Tensor::feature(int y, int x) const {
    check_rank(3);
    return {data_.data() + (static_cast<std::size_t>(y) * dims_[1] + x) * dims_[2], dims_[2]};
}

std::span<float> Tensor::feature(int y, int x) {
    check_rank(3);
    return {data_.data() + (static_cast<std::size_t>(y) * dims_[1] + x) * dims_[2], dims_[2]};
}

}  // namespace textspot
