// textspot: synth / spot / eval / match / bench over heat-map tensors.
//
// Exit codes: 0 success, 1 runtime error, 2 usage or config error.
// Diagnostics go to stderr; data goes to files or stdout.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "textspot/bench.hpp"
#include "textspot/config.hpp"
#include "textspot/decode.hpp"
#include "textspot/evalkit.hpp"
#include "textspot/gtsynth.hpp"
#include "textspot/lexicon.hpp"
#include "textspot/pipeline.hpp"
#include "textspot/records.hpp"
#include "textspot/tensor_io.hpp"

namespace {

using namespace textspot;

// Command-line threshold flags; set fields override the config file.
struct Overrides {
    std::string config_path;
    std::optional<double> box_threshold;
    std::optional<double> spot_threshold;
    std::optional<double> char_threshold;
    std::optional<double> size_threshold;
    std::optional<double> confidence_threshold;
    std::optional<double> reject_threshold;
    std::optional<int> stride;

    RunConfig resolve() const {
        RunConfig cfg = config_path.empty() ? RunConfig{} : load_config(config_path);
        if (box_threshold) cfg.spot.box.box_threshold = *box_threshold;
        if (spot_threshold) cfg.spot.spot.spot_threshold = *spot_threshold;
        if (char_threshold) cfg.spot.spot.char_threshold = *char_threshold;
        if (size_threshold) cfg.spot.spot.size_threshold = *size_threshold;
        if (confidence_threshold) cfg.spot.confidence_threshold = *confidence_threshold;
        if (reject_threshold) cfg.match.reject_threshold = *reject_threshold;
        if (stride) cfg.spot.stride = *stride;
        cfg.validate();
        return cfg;
    }
};

void bind_threshold_flags(CLI::App* cmd, Overrides& ov) {
    cmd->add_option("--config", ov.config_path, "JSON config file; flags override it")
        ->envname("TEXTSPOT_CONFIG");
    cmd->add_option("--box-threshold", ov.box_threshold,
                    "binarization threshold on clamp(R+A,0,1)");
    cmd->add_option("--spot-threshold", ov.spot_threshold,
                    "minimum region score for peak points");
    cmd->add_option("--char-threshold", ov.char_threshold,
                    "binarization threshold for labeling");
    cmd->add_option("--size-threshold", ov.size_threshold,
                    "shorter-side routing threshold (heat-map px)");
    cmd->add_option("--confidence-threshold", ov.confidence_threshold,
                    "minimum class probability to keep a point");
    cmd->add_option("--reject-threshold", ov.reject_threshold,
                    "lexicon match rejection cost per target char");
    cmd->add_option("--stride", ov.stride, "heat-map-to-image scale factor");
}

SpotMode parse_mode(const std::string& name) {
    if (name == "peak") return SpotMode::PeakOnly;
    if (name == "label") return SpotMode::LabelOnly;
    if (name == "hybrid") return SpotMode::Hybrid;
    throw ConfigError("unknown spotting mode: " + name);
}

int run_synth(const Overrides& ov, std::uint64_t seed, const std::string& out_dir, int width,
              int height, double large_fraction, double touching_fraction, bool glyph_detail,
              int feature_dim) {
    RunConfig cfg = ov.resolve();
    if (feature_dim < 94) throw ConfigError("--feature-dim must be >= 94");
    DecoderParams params = identity_params(static_cast<std::size_t>(feature_dim),
                                           default_alphabet(), cfg.spot.confidence_threshold);
    SceneOptions opts;
    opts.width = width;
    opts.height = height;
    opts.seed = seed;
    opts.large_fraction = large_fraction;
    opts.touching_fraction = touching_fraction;
    opts.glyph_detail = glyph_detail;
    opts.stride = cfg.spot.stride;
    Scene scene = make_scene(opts, params);

    write_tensor_file(out_dir + "/region.cfts", scene.gt.region_gt);
    write_tensor_file(out_dir + "/affinity.cfts", scene.gt.affinity_gt);
    write_tensor_file(out_dir + "/features.cfts", scene.features);
    write_annotations(out_dir + "/annotations.jsonl", {scene.annotation});
    write_decoder_params(out_dir + "/decoder", params);

    std::ofstream lex_out(out_dir + "/words.txt");
    for (const SceneWord& w : scene.words) lex_out << w.text << '\n';
    if (!lex_out) throw IoFailure("write failed: " + out_dir + "/words.txt");

    std::cerr << "synth: " << scene.words.size() << " words -> " << out_dir << "\n";
    return 0;
}

int run_spot(const Overrides& ov, const std::string& region_path,
             const std::string& affinity_path, const std::string& features_path,
             const std::string& weights_prefix, const std::string& lexicon_path,
             const std::string& out_path, const std::string& image_id,
             const std::string& mode) {
    RunConfig cfg = ov.resolve();
    cfg.spot.spot.mode = parse_mode(mode);

    Tensor region = read_tensor_file(region_path);
    Tensor affinity = read_tensor_file(affinity_path);
    Tensor features = read_tensor_file(features_path);
    DecoderParams params = read_decoder_params(weights_prefix, cfg.spot.confidence_threshold);

    std::vector<TextBox> words = spot(region, affinity, features, params, cfg.spot);

    std::optional<Lexicon> lex;
    if (!lexicon_path.empty()) lex = read_lexicon(lexicon_path);

    ResultRecord rec;
    rec.image_id = image_id;
    for (const TextBox& w : words) {
        ResultBox box;
        box.polygon.assign(w.polygon.begin(), w.polygon.end());
        box.transcription = w.transcription;
        box.score = w.mean_region_score;
        box.char_probs = w.char_probs;
        if (lex) {
            box.transcription = match_lexicon(box.char_probs, box.transcription, *lex,
                                              params.alphabet, cfg.match)
                                    .matched;
        }
        rec.boxes.push_back(std::move(box));
    }
    write_results(out_path, {rec});
    std::cerr << "spot: " << rec.boxes.size() << " words -> " << out_path << "\n";
    return 0;
}

int run_eval(const Overrides& ov, const std::string& pred_path, const std::string& gt_path,
             const std::string& lexicon_path, const std::string& protocol, double iou,
             const std::string& csv_path) {
    RunConfig cfg = ov.resolve();
    std::vector<ResultRecord> preds = read_results(pred_path);
    std::vector<AnnotationRecord> gts = read_annotations(gt_path);

    std::optional<Lexicon> lex;
    if (!lexicon_path.empty()) lex = read_lexicon(lexicon_path);
    const Lexicon* lex_ptr = lex ? &*lex : nullptr;
    std::string alphabet = default_alphabet();

    EvalReport report;
    if (protocol == "detection") {
        report = eval_detection(preds, gts, iou);
    } else if (protocol == "ws") {
        report = eval_recognition(preds, gts, Protocol::WordSpotting, lex_ptr, alphabet,
                                  cfg.match);
    } else if (protocol == "e2e") {
        report = eval_recognition(preds, gts, Protocol::EndToEnd, lex_ptr, alphabet, cfg.match);
    } else {
        throw ConfigError("unknown protocol: " + protocol);
    }

    std::cout << "protocol=" << protocol << " precision=" << report.precision
              << " recall=" << report.recall << " hmean=" << report.hmean << " tp=" << report.tp
              << " fp=" << report.fp << " fn=" << report.fn << "\n";
    if (!csv_path.empty()) {
        std::ofstream csv(csv_path);
        csv << "protocol,precision,recall,hmean,tp,fp,fn\n";
        csv << protocol << ',' << report.precision << ',' << report.recall << ','
            << report.hmean << ',' << report.tp << ',' << report.fp << ',' << report.fn << '\n';
        if (!csv) throw IoFailure("write failed: " + csv_path);
    }
    return 0;
}

int run_match(const Overrides& ov, const std::string& pred_path,
              const std::string& lexicon_path, const std::string& out_path) {
    RunConfig cfg = ov.resolve();
    std::vector<ResultRecord> preds = read_results(pred_path);
    Lexicon lex = read_lexicon(lexicon_path);
    std::string alphabet = default_alphabet();

    std::ofstream out(out_path);
    if (!out) throw IoFailure("cannot open for writing: " + out_path);
    for (const ResultRecord& rec : preds) {
        nlohmann::json matches = nlohmann::json::array();
        for (const ResultBox& box : rec.boxes) {
            auto rows = !box.char_probs.empty() ? box.char_probs
                                                : one_hot_rows(box.transcription, alphabet);
            MatchResult m = match_lexicon(rows, box.transcription, lex, alphabet, cfg.match);
            matches.push_back({{"original", m.original},
                               {"matched", m.matched},
                               {"cost", m.cost},
                               {"is_matched", m.is_matched}});
        }
        out << nlohmann::json{{"image_id", rec.image_id}, {"matches", matches}}.dump() << '\n';
    }
    if (!out) throw IoFailure("write failed: " + out_path);
    std::cout << "match: " << preds.size() << " records -> " << out_path << "\n";
    return 0;
}

int run_bench(const Overrides& ov, const std::vector<int>& scales, int reps,
              std::uint64_t seed, const std::string& out_path) {
    RunConfig cfg = ov.resolve();
    BenchConfig bench_cfg;
    if (!scales.empty()) bench_cfg.scales = scales;
    bench_cfg.reps = reps;
    bench_cfg.seed = seed;

    std::vector<BenchRecord> records = bench_pipeline(bench_cfg, cfg.spot);
    if (out_path.empty()) {
        write_bench_csv(std::cout, records);
    } else {
        std::ofstream out(out_path);
        if (!out) throw IoFailure("cannot open for writing: " + out_path);
        write_bench_csv(out, records);
        if (!out) throw IoFailure("write failed: " + out_path);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"text spotting post-processing toolkit"};
    app.require_subcommand(1);
    Overrides ov;

    // synth
    auto* synth = app.add_subcommand("synth", "synthesize a fixture scene");
    std::uint64_t synth_seed = 0;
    std::string synth_out = ".";
    int synth_w = 320, synth_h = 320, synth_f = 94;
    double synth_large = 0.4, synth_touch = 0.0;
    bool synth_detail = true;
    synth->add_option("--seed", synth_seed, "RNG seed")->required();
    synth->add_option("--out-dir", synth_out, "output directory");
    synth->add_option("--width", synth_w, "heat-map width");
    synth->add_option("--height", synth_h, "heat-map height");
    synth->add_option("--feature-dim", synth_f, "feature channels (>= 94)");
    synth->add_option("--large-fraction", synth_large, "fraction of large words");
    synth->add_option("--touching-fraction", synth_touch, "fraction of touching small words");
    synth->add_flag("--glyph-detail,!--no-glyph-detail", synth_detail,
                    "render sub-peaks on large characters");

    // spot
    auto* spot_cmd = app.add_subcommand("spot", "run the spotting pipeline");
    std::string spot_region, spot_affinity, spot_features, spot_weights, spot_lex;
    std::string spot_out = "results.jsonl", spot_image = "image-0", spot_mode = "hybrid";
    spot_cmd->add_option("--region", spot_region, "region map tensor")->required();
    spot_cmd->add_option("--affinity", spot_affinity, "affinity map tensor")->required();
    spot_cmd->add_option("--features", spot_features, "feature map tensor")->required();
    spot_cmd->add_option("--weights", spot_weights, "decoder params path prefix")->required();
    spot_cmd->add_option("--lexicon", spot_lex, "optional lexicon for matching");
    spot_cmd->add_option("--out", spot_out, "results file");
    spot_cmd->add_option("--image-id", spot_image, "image id for the result record");
    spot_cmd->add_option("--mode", spot_mode, "hybrid | peak | label");

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "score predictions against annotations");
    std::string eval_pred, eval_gt, eval_lex, eval_protocol = "detection", eval_csv;
    double eval_iou = 0.5;
    eval_cmd->add_option("--pred", eval_pred, "results file")->required();
    eval_cmd->add_option("--gt", eval_gt, "annotations file")->required();
    eval_cmd->add_option("--lexicon", eval_lex, "optional lexicon");
    eval_cmd->add_option("--protocol", eval_protocol, "detection | ws | e2e");
    eval_cmd->add_option("--iou", eval_iou, "IoU threshold (detection protocol)");
    eval_cmd->add_option("--csv", eval_csv, "also write the report as CSV");

    // match
    auto* match_cmd = app.add_subcommand("match", "lexicon-match decoded results");
    std::string match_pred, match_lex_path, match_out = "matches.jsonl";
    match_cmd->add_option("--pred", match_pred, "results file")->required();
    match_cmd->add_option("--lexicon", match_lex_path, "lexicon file")->required();
    match_cmd->add_option("--out", match_out, "match results file");

    // bench
    auto* bench_cmd = app.add_subcommand("bench", "time pipeline stages across scales");
    std::vector<int> bench_scales;
    int bench_reps = 12;
    std::uint64_t bench_seed = 0;
    std::string bench_out;
    bench_cmd->add_option("--scales", bench_scales, "image long sides")->delimiter(',');
    bench_cmd->add_option("--reps", bench_reps, "timed repetitions (>= 10)");
    bench_cmd->add_option("--seed", bench_seed, "RNG seed")->required();
    bench_cmd->add_option("--out", bench_out, "CSV path (default stdout)");

    for (CLI::App* cmd : {synth, spot_cmd, eval_cmd, match_cmd, bench_cmd}) {
        bind_threshold_flags(cmd, ov);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (synth->parsed()) {
            return run_synth(ov, synth_seed, synth_out, synth_w, synth_h, synth_large,
                             synth_touch, synth_detail, synth_f);
        }
        if (spot_cmd->parsed()) {
            return run_spot(ov, spot_region, spot_affinity, spot_features, spot_weights,
                            spot_lex, spot_out, spot_image, spot_mode);
        }
        if (eval_cmd->parsed()) {
            return run_eval(ov, eval_pred, eval_gt, eval_lex, eval_protocol, eval_iou,
                            eval_csv);
        }
        if (match_cmd->parsed()) {
            return run_match(ov, match_pred, match_lex_path, match_out);
        }
        if (bench_cmd->parsed()) {
            return run_bench(ov, bench_scales, bench_reps, bench_seed, bench_out);
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
