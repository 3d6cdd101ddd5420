#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "textspot/tensor.hpp"

namespace textspot {

// Binary tensor container. Layout, all little-endian:
//   magic   4 bytes  "CFTS"
//   version u8       1
//   dtype   u8       0 = float32
//   rank    u8       2 or 3
//   dims    rank x u32
//   payload prod(dims) x f32, row-major, channel axis innermost
struct BadMagic : std::runtime_error {
    explicit BadMagic(const std::string& what) : std::runtime_error(what) {}
};
struct UnsupportedVersion : std::runtime_error {
    explicit UnsupportedVersion(const std::string& what) : std::runtime_error(what) {}
};
struct MalformedHeader : std::runtime_error {
    explicit MalformedHeader(const std::string& what) : std::runtime_error(what) {}
};
struct TruncatedPayload : std::runtime_error {
    explicit TruncatedPayload(const std::string& what) : std::runtime_error(what) {}
};
struct IoFailure : std::runtime_error {
    explicit IoFailure(const std::string& what) : std::runtime_error(what) {}
};

Tensor read_tensor(std::istream& in);
Tensor read_tensor_file(const std::string& path);

void write_tensor(std::ostream& out, const Tensor& t);
void write_tensor_file(const std::string& path, const Tensor& t);

// Exact size in bytes of the serialized form.
std::size_t tensor_file_size(const Tensor& t);

}  // namespace textspot
