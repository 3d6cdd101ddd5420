#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "textspot/pipeline.hpp"

namespace textspot {

struct BenchRecord {
    std::string stage;   // detect | charspot | decode | assemble | total
    std::string dims;    // input image HxW (heat maps are this / stride)
    int long_side = 0;   // image long side the scale corresponds to
    int reps = 0;
    double median_ms = 0.0;
    double p90_ms = 0.0;
    double mean_ms = 0.0;
    double throughput = 0.0;  // images/s at the median
};

struct BenchConfig {
    std::vector<int> scales = {720, 1080, 1440, 2160};  // image long sides
    int reps = 12;      // timed repetitions, after 3 warm-ups
    std::uint64_t seed = 7;
};

// One synthesized fixture scene per scale, spot() run reps times at batch
// size one; tensors live in memory so timing has no I/O in it.
std::vector<BenchRecord> bench_pipeline(const BenchConfig& bench_cfg, const SpotConfig& cfg);

// stage,dims,median_ms,p90_ms,mean_ms,throughput
void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records);

double median(std::vector<double> xs);
double percentile90(std::vector<double> xs);

}  // namespace textspot
