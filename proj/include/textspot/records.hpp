#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "textspot/geometry.hpp"

namespace textspot {

struct MalformedRecord : std::runtime_error {
    explicit MalformedRecord(const std::string& what) : std::runtime_error(what) {}
};

// One annotated image: polygons in image pixels (x right, y down), one
// transcription per polygon, ignore flags for don't-care regions.
// Vertex order is stored as given, no winding is assumed.
struct AnnotationRecord {
    std::string image_id;
    std::vector<std::vector<Point>> polygons;
    std::vector<std::string> transcriptions;
    std::vector<bool> ignore;
};

struct ResultBox {
    std::vector<Point> polygon;
    std::string transcription;
    double score = 0.0;
    // Per-character class probabilities; optional, but required for
    // confidence-weighted lexicon matching downstream.
    std::vector<std::vector<float>> char_probs;
};

struct ResultRecord {
    std::string image_id;
    std::vector<ResultBox> boxes;
};

enum class LexiconKind { Strong, Weak, Generic, Custom };

struct Lexicon {
    std::vector<std::string> words;  // uppercased, deduplicated, no empties
    LexiconKind kind = LexiconKind::Custom;
};

// Annotations and results are line-delimited JSON, one record per line.
std::vector<AnnotationRecord> read_annotations(const std::string& path);
void write_annotations(const std::string& path, const std::vector<AnnotationRecord>& recs);

std::vector<ResultRecord> read_results(const std::string& path);
void write_results(const std::string& path, const std::vector<ResultRecord>& recs);

std::string annotation_to_json(const AnnotationRecord& rec);
AnnotationRecord annotation_from_json(const std::string& line);
std::string result_to_json(const ResultRecord& rec);
ResultRecord result_from_json(const std::string& line);

// Lexicons are plain text, one word per line; words are uppercased at
// load because the matching protocol is case-insensitive.
Lexicon read_lexicon(const std::string& path, LexiconKind kind = LexiconKind::Custom);
void write_lexicon(const std::string& path, const Lexicon& lex);
Lexicon make_lexicon(std::vector<std::string> words, LexiconKind kind = LexiconKind::Custom);

std::string to_upper(const std::string& s);

}  // namespace textspot
