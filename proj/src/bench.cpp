#include "textspot/bench.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "textspot/gtsynth.hpp"

namespace textspot {

double median(std::vector<double> xs) {
    if (xs.empty()) throw std::invalid_argument("median of empty sample");
    std::sort(xs.begin(), xs.end());
    std::size_t n = xs.size();
    return n % 2 == 1 ? xs[n / 2] : 0.5 * (xs[n / 2 - 1] + xs[n / 2]);
}

double percentile90(std::vector<double> xs) {
    if (xs.empty()) throw std::invalid_argument("percentile of empty sample");
    std::sort(xs.begin(), xs.end());
    // Nearest-rank definition; never below the median.
    std::size_t rank = static_cast<std::size_t>(std::ceil(0.9 * static_cast<double>(xs.size())));
    return xs[rank - 1];
}

std::vector<BenchRecord> bench_pipeline(const BenchConfig& bench_cfg, const SpotConfig& cfg) {
    if (bench_cfg.reps < 10) throw ConfigError("bench needs reps >= 10");
    cfg.validate();

    DecoderParams params = identity_params(94, default_alphabet(), cfg.confidence_threshold);
    std::vector<BenchRecord> records;

    for (int scale : bench_cfg.scales) {
        SceneOptions opts;
        opts.width = scale / cfg.stride;
        opts.height = scale / cfg.stride;
        opts.seed = bench_cfg.seed;  // same seed: same words at every scale
        opts.stride = cfg.stride;
        Scene scene = make_scene(opts, params);

        const char* stages[] = {"detect", "charspot", "decode", "assemble", "total"};
        std::vector<std::vector<double>> samples(5);

        for (int rep = 0; rep < bench_cfg.reps + 3; ++rep) {
            StageTimes t;
            std::vector<TextBox> out =
                spot(scene.gt.region_gt, scene.gt.affinity_gt, scene.features, params, cfg, &t);
            if (rep < 3) continue;  // warm-up
            samples[0].push_back(t.detect_ms);
            samples[1].push_back(t.charspot_ms);
            samples[2].push_back(t.decode_ms);
            samples[3].push_back(t.assemble_ms);
            samples[4].push_back(t.total_ms);
        }

        for (int s = 0; s < 5; ++s) {
            BenchRecord r;
            r.stage = stages[s];
            r.dims = std::to_string(opts.height * opts.stride) + "x" +
                     std::to_string(opts.width * opts.stride);
            r.long_side = scale;
            r.reps = bench_cfg.reps;
            r.median_ms = median(samples[s]);
            r.p90_ms = percentile90(samples[s]);
            r.mean_ms = std::accumulate(samples[s].begin(), samples[s].end(), 0.0) /
                        static_cast<double>(samples[s].size());
            r.throughput = r.median_ms > 0.0 ? 1000.0 / r.median_ms : 0.0;
            records.push_back(std::move(r));
        }
    }
    return records;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
    out << "stage,dims,median_ms,p90_ms,mean_ms,throughput\n";
    for (const BenchRecord& r : records) {
        out << r.stage << ',' << r.dims << ',' << r.median_ms << ',' << r.p90_ms << ','
            << r.mean_ms << ',' << r.throughput << '\n';
    }
}

}  // namespace textspot
