#include "textspot/tensor_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>

namespace textspot {

namespace {

constexpr char kMagic[4] = {'C', 'F', 'T', 'S'};
constexpr std::uint8_t kVersion = 1;
constexpr std::uint8_t kDtypeF32 = 0;

std::uint32_t load_u32_le(const unsigned char* b) {
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}

void store_u32_le(unsigned char* b, std::uint32_t v) {
    b[0] = static_cast<unsigned char>(v);
    b[1] = static_cast<unsigned char>(v >> 8);
    b[2] = static_cast<unsigned char>(v >> 16);
    b[3] = static_cast<unsigned char>(v >> 24);
}

}  // namespace

Tensor read_tensor(std::istream& in) {
    char magic[4];
    if (!in.read(magic, 4)) throw BadMagic("file shorter than magic");
    if (std::memcmp(magic, kMagic, 4) != 0) {
        throw BadMagic("bad magic bytes, not a tensor file");
    }

    unsigned char head[3];
    if (!in.read(reinterpret_cast<char*>(head), 3)) {
        throw MalformedHeader("header truncated after magic");
    }
    if (head[0] != kVersion) {
        throw UnsupportedVersion("unsupported version " + std::to_string(head[0]));
    }
    if (head[1] != kDtypeF32) {
        throw MalformedHeader("unsupported dtype " + std::to_string(head[1]));
    }
    std::uint8_t rank = head[2];
    if (rank != 2 && rank != 3) {
        throw MalformedHeader("rank must be 2 or 3, got " + std::to_string(rank));
    }

    std::vector<std::uint32_t> dims(rank);
    for (std::uint8_t i = 0; i < rank; ++i) {
        unsigned char raw[4];
        if (!in.read(reinterpret_cast<char*>(raw), 4)) {
            throw MalformedHeader("dims truncated");
        }
        dims[i] = load_u32_le(raw);
        if (dims[i] == 0) throw MalformedHeader("zero dimension");
    }

    std::size_t count = 1;
    for (std::uint32_t d : dims) count *= d;
    std::vector<float> data(count);
    std::vector<unsigned char> raw(count * 4);
    if (!in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()))) {
        throw TruncatedPayload("payload shorter than dims imply");
    }
    for (std::size_t i = 0; i < count; ++i) {
        data[i] = std::bit_cast<float>(load_u32_le(raw.data() + 4 * i));
    }
    return Tensor(std::move(dims), std::move(data));
}

Tensor read_tensor_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot open for reading: " + path);
    return read_tensor(in);
}

void write_tensor(std::ostream& out, const Tensor& t) {
    out.write(kMagic, 4);
    unsigned char head[3] = {kVersion, kDtypeF32, t.rank()};
    out.write(reinterpret_cast<const char*>(head), 3);
    for (std::uint32_t d : t.dims()) {
        unsigned char raw[4];
        store_u32_le(raw, d);
        out.write(reinterpret_cast<const char*>(raw), 4);
    }
    std::vector<unsigned char> raw(t.data().size() * 4);
    for (std::size_t i = 0; i < t.data().size(); ++i) {
        store_u32_le(raw.data() + 4 * i, std::bit_cast<std::uint32_t>(t.data()[i]));
    }
    out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (!out) throw IoFailure("write failed");
}

void write_tensor_file(const std::string& path, const Tensor& t) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure("cannot open for writing: " + path);
    write_tensor(out, t);
}

std::size_t tensor_file_size(const Tensor& t) {
    return 4 + 1 + 1 + 1 + static_cast<std::size_t>(t.rank()) * 4 + t.data().size() * 4;
}

}  // namespace textspot
