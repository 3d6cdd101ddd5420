#include "textspot/records.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>

#include <json.hpp>

#include "textspot/tensor_io.hpp"

namespace textspot {

using nlohmann::json;

namespace {

json points_to_json(const std::vector<Point>& poly) {
    json arr = json::array();
    for (const Point& p : poly) arr.push_back(json::array({p.x, p.y}));
    return arr;
}

std::vector<Point> points_from_json(const json& arr) {
    std::vector<Point> poly;
    for (const auto& v : arr) {
        if (!v.is_array() || v.size() != 2) {
            throw MalformedRecord("polygon vertex must be a [x, y] pair");
        }
        poly.push_back({v[0].get<double>(), v[1].get<double>()});
    }
    return poly;
}

void check_annotation(const AnnotationRecord& rec) {
    if (rec.polygons.size() != rec.transcriptions.size() ||
        rec.polygons.size() != rec.ignore.size()) {
        throw MalformedRecord("annotation lists disagree in length for " + rec.image_id);
    }
    for (const auto& p : rec.polygons) {
        if (p.size() < 4) throw MalformedRecord("polygon with fewer than 4 vertices");
    }
}

}  // namespace

std::string annotation_to_json(const AnnotationRecord& rec) {
    check_annotation(rec);
    json polys = json::array();
    for (const auto& p : rec.polygons) polys.push_back(points_to_json(p));
    json j{{"image_id", rec.image_id},
           {"polygons", polys},
           {"transcriptions", rec.transcriptions},
           {"ignore", rec.ignore}};
    return j.dump();
}

AnnotationRecord annotation_from_json(const std::string& line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::parse_error& e) {
        throw MalformedRecord(std::string("annotation is not valid JSON: ") + e.what());
    }
    AnnotationRecord rec;
    try {
        rec.image_id = j.at("image_id").get<std::string>();
        for (const auto& p : j.at("polygons")) rec.polygons.push_back(points_from_json(p));
        rec.transcriptions = j.at("transcriptions").get<std::vector<std::string>>();
        rec.ignore = j.at("ignore").get<std::vector<bool>>();
    } catch (const json::exception& e) {
        throw MalformedRecord(std::string("annotation missing field: ") + e.what());
    }
    check_annotation(rec);
    return rec;
}

std::string result_to_json(const ResultRecord& rec) {
    json boxes = json::array();
    for (const ResultBox& b : rec.boxes) {
        json jb{{"polygon", points_to_json(b.polygon)},
                {"transcription", b.transcription},
                {"score", b.score}};
        if (!b.char_probs.empty()) jb["char_probs"] = b.char_probs;
        boxes.push_back(std::move(jb));
    }
    return json{{"image_id", rec.image_id}, {"boxes", boxes}}.dump();
}

ResultRecord result_from_json(const std::string& line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::parse_error& e) {
        throw MalformedRecord(std::string("result is not valid JSON: ") + e.what());
    }
    ResultRecord rec;
    try {
        rec.image_id = j.at("image_id").get<std::string>();
        for (const auto& b : j.at("boxes")) {
            ResultBox box;
            box.polygon = points_from_json(b.at("polygon"));
            box.transcription = b.at("transcription").get<std::string>();
            box.score = b.at("score").get<double>();
            if (b.contains("char_probs")) {
                box.char_probs = b.at("char_probs").get<std::vector<std::vector<float>>>();
            }
            rec.boxes.push_back(std::move(box));
        }
    } catch (const json::exception& e) {
        throw MalformedRecord(std::string("result missing field: ") + e.what());
    }
    return rec;
}

namespace {

template <typename Rec, typename Parse>
std::vector<Rec> read_lines(const std::string& path, Parse parse) {
    std::ifstream in(path);
    if (!in) throw IoFailure("cannot open for reading: " + path);
    std::vector<Rec> recs;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        recs.push_back(parse(line));
    }
    return recs;
}

template <typename Rec, typename Dump>
void write_lines(const std::string& path, const std::vector<Rec>& recs, Dump dump) {
    std::ofstream out(path);
    if (!out) throw IoFailure("cannot open for writing: " + path);
    for (const Rec& r : recs) out << dump(r) << '\n';
    if (!out) throw IoFailure("write failed: " + path);
}

}  // namespace

std::vector<AnnotationRecord> read_annotations(const std::string& path) {
    return read_lines<AnnotationRecord>(path, annotation_from_json);
}

void write_annotations(const std::string& path, const std::vector<AnnotationRecord>& recs) {
    write_lines(path, recs, annotation_to_json);
}

std::vector<ResultRecord> read_results(const std::string& path) {
    return read_lines<ResultRecord>(path, result_from_json);
}

void write_results(const std::string& path, const std::vector<ResultRecord>& recs) {
    write_lines(path, recs, result_to_json);
}

std::string to_upper(const std::string& s) {
    std::string out = s;
    std::transform(out.begin(), out.end(), out.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    return out;
}

Lexicon make_lexicon(std::vector<std::string> words, LexiconKind kind) {
    Lexicon lex;
    lex.kind = kind;
    for (std::string& w : words) {
        if (w.empty()) continue;
        lex.words.push_back(to_upper(w));
    }
    std::sort(lex.words.begin(), lex.words.end());
    lex.words.erase(std::unique(lex.words.begin(), lex.words.end()), lex.words.end());
    return lex;
}

Lexicon read_lexicon(const std::string& path, LexiconKind kind) {
    std::ifstream in(path);
    if (!in) throw IoFailure("cannot open for reading: " + path);
    std::vector<std::string> words;
    std::string line;
    while (std::getline(in, line)) {
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
        if (!line.empty()) words.push_back(line);
    }
    return make_lexicon(std::move(words), kind);
}

void write_lexicon(const std::string& path, const Lexicon& lex) {
    std::ofstream out(path);
    if (!out) throw IoFailure("cannot open for writing: " + path);
    for (const std::string& w : lex.words) out << w << '\n';
    if (!out) throw IoFailure("write failed: " + path);
}

}  // namespace textspot
