// Command-line front-end: load the score and the arrangement request, run
// the search, and write the arranged MusicXML file.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "arrange/instruments.hpp"
#include "arrange/musicxml.hpp"
#include "arrange/search.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;       // I/O or parse failure
constexpr int kExitCountMismatch = 2;
constexpr int kExitInfeasible = 3;

std::string readFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw arranger::ParseError("cannot open " + path.string());
  }
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// Temp file + rename, so the output path never holds a partial document.
void writeFileAtomic(const std::filesystem::path& path,
                     const std::string& contents) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw arranger::ParseError("cannot write " + tmp.string());
    }
    out << contents;
    if (!out.flush()) {
      throw arranger::ParseError("write failed for " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Re-arranges a multi-part piece for a different set of "
               "monophonic instruments"};

  std::string input_path;
  std::string arrangement_path;
  std::string catalog_path;
  std::string output_path;
  bool verbose = false;

  app.add_option("input", input_path, "Input MusicXML file (score-partwise)")
      ->required();
  app.add_option("arrangement", arrangement_path,
                 "TOML file listing the instruments to arrange for")
      ->required();
  app.add_option("--catalog", catalog_path,
                 "Instrument metadata TOML (defaults to the bundled catalog)");
  app.add_option("--output", output_path,
                 "Output path (default: <input stem>.arranged.musicxml)");
  app.add_flag("-v,--verbose", verbose, "Print search details to stderr");

  CLI11_PARSE(app, argc, argv);

  if (output_path.empty()) {
    std::filesystem::path p(input_path);
    output_path = (p.parent_path() / p.stem()).string() + ".arranged.musicxml";
  }

  arranger::ScoreDocument score;
  arranger::SlotList slots;
  try {
    score = arranger::loadMusicXml(readFile(input_path));

    const arranger::InstrumentCatalog* catalog = &arranger::defaultCatalog();
    arranger::InstrumentCatalog loaded;
    if (!catalog_path.empty()) {
      loaded = arranger::loadInstrumentMetadata(readFile(catalog_path));
      catalog = &loaded;
    }
    slots = arranger::loadArrangement(readFile(arrangement_path), *catalog);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitError;
  }

  if (score.piece.parts.size() != slots.size()) {
    std::cerr << "error: the piece has " << score.piece.parts.size()
              << " part(s) but " << arrangement_path << " requests "
              << slots.size() << " instrument slot(s)\n";
    return kExitCountMismatch;
  }

  if (verbose) {
    std::cerr << "parts: " << score.piece.parts.size()
              << ", concert fifths: " << score.piece.key.fifths << "\n";
    for (std::size_t j = 0; j < slots.size(); ++j) {
      std::cerr << "slot " << j << ": " << slots[j].id << " ["
                << arranger::formatNoteName(slots[j].range.lo, {})
                << ".."
                << arranger::formatNoteName(slots[j].range.hi, {}) << "]\n";
    }
  }

  std::optional<arranger::ArrangementResult> result =
      arranger::arrange(score.piece, slots);
  if (!result) {
    std::cerr << "error: no feasible arrangement for the requested "
              << "instrument set\n";
    return kExitInfeasible;
  }

  if (verbose) {
    for (std::size_t i = 0; i < result->assignment.size(); ++i) {
      std::cerr << "part " << score.piece.parts[i].id << " -> slot "
                << result->assignment[i] << " ("
                << slots[result->assignment[i]].id << "), shift "
                << result->shifts[i] << "\n";
    }
  }

  try {
    writeFileAtomic(output_path, arranger::saveMusicXml(*result, score, slots));
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitError;
  }

  std::printf("sharps=%d deviation=%d fit=%.2f\n", result->sharps,
              result->deviation, result->fit);
  return kExitOk;
}
