#include <doctest.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "textspot/tensor.hpp"
#include "textspot/tensor_io.hpp"

using namespace textspot;

namespace {

std::string serialize(const Tensor& t) {
    std::ostringstream out(std::ios::binary);
    write_tensor(out, t);
    return out.str();
}

Tensor parse(const std::string& bytes) {
    std::istringstream in(bytes, std::ios::binary);
    return read_tensor(in);
}

}  // namespace

TEST_CASE("2x3 grid of 0..5 round-trips to identical values") {
    Tensor t({2, 3}, {0, 1, 2, 3, 4, 5});
    Tensor back = parse(serialize(t));
    CHECK(back.dims() == t.dims());
    CHECK(back.data() == t.data());
    CHECK(back.at(1, 2) == 5.0f);
}

TEST_CASE("bad magic bytes are rejected") {
    Tensor t({1, 1}, {0.0f});
    std::string bytes = serialize(t);
    bytes[0] = 'X';
    bytes[1] = 'X';
    bytes[2] = 'X';
    bytes[3] = 'X';
    CHECK_THROWS_AS(parse(bytes), BadMagic);
}

TEST_CASE("payload shorter than the dims imply is rejected") {
    Tensor t({4, 4}, std::vector<float>(16, 1.0f));
    std::string bytes = serialize(t);
    bytes.resize(bytes.size() - 4);  // drop one float: 15 remain
    CHECK_THROWS_AS(parse(bytes), TruncatedPayload);
}

TEST_CASE("serialized size follows directly from the format definition") {
    // magic 4 + version 1 + dtype 1 + rank 1 + rank*4 dims + elems*4 payload
    Tensor one({1, 1}, {0.0f});
    CHECK(serialize(one).size() == oracle::format_byte_count(2, 1));
    CHECK(tensor_file_size(one) == oracle::format_byte_count(2, 1));
    CHECK(oracle::format_byte_count(2, 1) == 19);

    Tensor grid({2, 3}, {0, 1, 2, 3, 4, 5});
    CHECK(serialize(grid).size() == oracle::format_byte_count(2, 6));

    Tensor feat = Tensor::zeros({2, 2, 256});
    CHECK(serialize(feat).size() == oracle::format_byte_count(3, 2 * 2 * 256));
}

TEST_CASE("rank-3 2x2x256 feature map round-trips") {
    Tensor t = Tensor::zeros({2, 2, 256});
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<float> u(-10.0f, 10.0f);
    for (float& v : t.data()) v = u(rng);
    Tensor back = parse(serialize(t));
    CHECK(back.dims() == t.dims());
    CHECK(back.data() == t.data());
}

TEST_CASE("NaN payload values survive the round trip") {
    Tensor t({1, 2}, {std::numeric_limits<float>::quiet_NaN(),
                      std::numeric_limits<float>::infinity()});
    Tensor back = parse(serialize(t));
    CHECK(std::isnan(back.at(0, 0)));
    CHECK(std::isinf(back.at(0, 1)));
}

TEST_CASE("round trip is bit-exact for random finite tensors") {
    std::mt19937_64 rng(99);
    std::uniform_int_distribution<std::uint32_t> dim(1, 9);
    std::uniform_real_distribution<float> u(-1e6f, 1e6f);
    for (int trial = 0; trial < 30; ++trial) {
        std::vector<std::uint32_t> dims = trial % 2 == 0
                                              ? std::vector<std::uint32_t>{dim(rng), dim(rng)}
                                              : std::vector<std::uint32_t>{dim(rng), dim(rng),
                                                                           dim(rng)};
        Tensor t = Tensor::zeros(dims);
        for (float& v : t.data()) v = u(rng);
        std::string bytes = serialize(t);
        Tensor back = parse(bytes);
        CHECK(std::memcmp(back.data().data(), t.data().data(),
                          t.data().size() * sizeof(float)) == 0);
        // a second serialization is byte-identical
        CHECK(serialize(back) == bytes);
    }
}

TEST_CASE("header field errors are reported by name") {
    Tensor t({1, 1}, {0.0f});
    std::string bytes = serialize(t);

    std::string wrong_version = bytes;
    wrong_version[4] = 9;
    CHECK_THROWS_AS(parse(wrong_version), UnsupportedVersion);

    std::string wrong_dtype = bytes;
    wrong_dtype[5] = 1;
    CHECK_THROWS_AS(parse(wrong_dtype), MalformedHeader);

    std::string wrong_rank = bytes;
    wrong_rank[6] = 4;
    CHECK_THROWS_AS(parse(wrong_rank), MalformedHeader);

    std::string zero_dim = bytes;
    zero_dim[7] = zero_dim[8] = zero_dim[9] = zero_dim[10] = 0;
    CHECK_THROWS_AS(parse(zero_dim), MalformedHeader);
}

TEST_CASE("rank construction is validated") {
    CHECK_THROWS_AS(Tensor({4}, std::vector<float>(4, 0.0f)), DimMismatch);
    CHECK_THROWS_AS(Tensor({2, 2}, std::vector<float>(3, 0.0f)), DimMismatch);
    CHECK_THROWS_AS(Tensor({2, 2, 2, 2}, std::vector<float>(16, 0.0f)), DimMismatch);
}

TEST_CASE("file variants surface IO failures") {
    CHECK_THROWS_AS(read_tensor_file("/nonexistent/dir/t.cfts"), IoFailure);
    Tensor t({1, 1}, {0.0f});
    CHECK_THROWS_AS(write_tensor_file("/nonexistent/dir/t.cfts", t), IoFailure);
}
