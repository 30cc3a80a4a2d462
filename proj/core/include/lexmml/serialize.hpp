#ifndef LEXMML_SERIALIZE_HPP
#define LEXMML_SERIALIZE_HPP

#include <filesystem>

#include "lexmml/codec.hpp"

namespace lexmml {

// Trained-model directory layout. Each file is a versioned text table that
// round-trips bit-identically (counts stay integers, reals are printed with
// full precision).
inline constexpr const char* kLmFile = "lm.txt";
inline constexpr const char* kConfusionFile = "confusion.txt";
inline constexpr const char* kInsertionsFile = "insertions.txt";
inline constexpr const char* kCostsFile = "costs.txt";
inline constexpr const char* kClassesFile = "classes.txt";

void save_language_model(const LanguageModel& lm, const std::filesystem::path& file);
LanguageModel load_language_model(const std::filesystem::path& file);

void save_confusion_model(const ConfusionModel& m, const std::filesystem::path& file);
ConfusionModel load_confusion_model(const std::filesystem::path& file);

void save_insertion_dist(const InsertionCountDist& d, const std::filesystem::path& file);
InsertionCountDist load_insertion_dist(const std::filesystem::path& file);

void save_cost_model(const CostModel& m, const std::filesystem::path& file);
CostModel load_cost_model(const std::filesystem::path& file);

void save_class_model(const ClassModel& m, const std::filesystem::path& file);
ClassModel load_class_model(const std::filesystem::path& file);

// Writes / reads the five trained artifacts. Inventory, broad groups and
// lexicon are configuration inputs and stay outside the model directory.
void save_trained(const Models& models, const std::filesystem::path& dir);
void load_trained(Models& models, const std::filesystem::path& dir);

} // namespace lexmml

#endif
