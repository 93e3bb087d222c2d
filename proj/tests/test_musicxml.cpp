#include <string>
#include <vector>

#include "arrange/musicxml.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace arranger;
using namespace arranger::testing;

namespace {

ArrangementResult identityResult(const Piece& piece) {
  ArrangementResult result;
  for (std::size_t i = 0; i < piece.parts.size(); ++i) {
    result.assignment.push_back(static_cast<int>(i));
    result.shifts.push_back(0);
  }
  result.concert_fifths = piece.key;
  return result;
}

SlotList wideConcertSlots(std::size_t n) {
  std::vector<Instrument> slots;
  for (std::size_t i = 0; i < n; ++i) {
    slots.push_back(makeInstrument("wide" + std::to_string(i), "A0", "C8"));
  }
  return makeSlots(std::move(slots));
}

std::vector<std::optional<int>> pitchesOf(const Part& part) {
  std::vector<std::optional<int>> out;
  for (const NoteEvent& ev : part.events) {
    out.push_back(ev.pitch ? std::optional<int>(ev.pitch->value)
                           : std::nullopt);
  }
  return out;
}

}  // namespace

TEST_CASE("load minimal single-note document") {
  ScoreDocument doc =
      loadMusicXml(makeMusicXml(0, 1, {{"C4:4"}}));
  REQUIRE(doc.piece.parts.size() == 1);
  REQUIRE(doc.piece.parts[0].events.size() == 1);
  CHECK(doc.piece.parts[0].events[0].pitch->value == 40);
  CHECK(doc.piece.parts[0].events[0].duration == 4);
  CHECK(doc.piece.parts[0].measure_count == 1);
  CHECK(doc.piece.key.fifths == 0);
  CHECK(doc.piece.parts[0].name == "Part 1");
}

TEST_CASE("load four-part chorale fixture in three flats") {
  ScoreDocument doc = loadMusicXml(makeMusicXml(
      -3, 2,
      {{"Eb5:2 F5:2 G5:2 Ab5:2", "G5:4 Eb5:4"},
       {"G4:2 Ab4:2 Bb4:2 C5:2", "Bb4:4 G4:4"},
       {"Bb3:2 C4:2 Eb4:2 Eb4:2", "Eb4:4 Bb3:4"},
       {"Eb3:2 F3:2 G3:2 Ab3:2", "Bb3:4 Eb3:4"}}));
  CHECK(doc.piece.parts.size() == 4);
  CHECK(doc.piece.key.fifths == -3);
  for (const Part& part : doc.piece.parts) {
    CHECK(part.measure_count == 2);
    CHECK(part.events.size() == 6);
  }
}

TEST_CASE("load rejects polyphony") {
  CHECK_THROWS_WITH_AS(loadMusicXml(makeMusicXml(0, 1, {{"C4:1 +E4:1"}})),
                       doctest::Contains("chord"), ParseError);

  // Two voices written with a backup element.
  std::string two_voices = R"(<?xml version="1.0"?>
<score-partwise version="3.1">
  <part-list><score-part id="P1"><part-name>A</part-name></score-part></part-list>
  <part id="P1"><measure number="1">
    <attributes><divisions>1</divisions></attributes>
    <note><pitch><step>C</step><octave>4</octave></pitch><duration>4</duration><voice>1</voice></note>
    <backup><duration>4</duration></backup>
    <note><pitch><step>E</step><octave>3</octave></pitch><duration>4</duration><voice>2</voice></note>
  </measure></part>
</score-partwise>)";
  CHECK_THROWS_AS(loadMusicXml(two_voices), ParseError);
}

TEST_CASE("load rejects unsupported documents") {
  CHECK_THROWS_AS(loadMusicXml("<score-timewise></score-timewise>"),
                  ParseError);
  CHECK_THROWS_AS(loadMusicXml("not xml at all <"), ParseError);
  CHECK_THROWS_AS(loadMusicXml("<music/>"), ParseError);
  CHECK_THROWS_AS(loadMusicXml(makeMusicXml(0, 1, {{"r:4"}})), ParseError);
}

TEST_CASE("divisions are normalized across parts") {
  std::string mixed = R"(<?xml version="1.0"?>
<score-partwise version="3.1">
  <part-list>
    <score-part id="P1"><part-name>A</part-name></score-part>
    <score-part id="P2"><part-name>B</part-name></score-part>
  </part-list>
  <part id="P1"><measure number="1">
    <attributes><divisions>2</divisions><key><fifths>0</fifths></key></attributes>
    <note><pitch><step>C</step><octave>4</octave></pitch><duration>2</duration></note>
  </measure></part>
  <part id="P2"><measure number="1">
    <attributes><divisions>3</divisions></attributes>
    <note><pitch><step>E</step><octave>4</octave></pitch><duration>3</duration></note>
  </measure></part>
</score-partwise>)";
  ScoreDocument doc = loadMusicXml(mixed);
  CHECK(doc.piece.divisions == 6);
  CHECK(doc.piece.parts[0].events[0].duration == 6);
  CHECK(doc.piece.parts[1].events[0].duration == 6);
}

TEST_CASE("grace notes are carried but not modeled") {
  ScoreDocument doc = loadMusicXml(makeMusicXml(0, 1, {{"gD4 C4:4"}}));
  REQUIRE(doc.piece.parts[0].events.size() == 1);
  CHECK(doc.piece.parts[0].events[0].pitch->value == 40);

  std::string out =
      saveMusicXml(identityResult(doc.piece), doc, wideConcertSlots(1));
  CHECK(out.find("<grace/>") != std::string::npos);
}

TEST_CASE("identity arrangement round-trips the score") {
  ScoreDocument doc = loadMusicXml(makeMusicXml(
      -1, 2,
      {{"F4:2 G4:2 A4:2 Bb4:1 C5:1", "r:2 F4:2tT F4:4"},
       {"F3:4 C4:4", "Bb3:4 F3:4"}}));
  std::string out =
      saveMusicXml(identityResult(doc.piece), doc, wideConcertSlots(2));
  ScoreDocument reloaded = loadMusicXml(out);

  CHECK(reloaded.piece.key.fifths == doc.piece.key.fifths);
  REQUIRE(reloaded.piece.parts.size() == doc.piece.parts.size());
  for (std::size_t i = 0; i < doc.piece.parts.size(); ++i) {
    const Part& before = doc.piece.parts[i];
    const Part& after = reloaded.piece.parts[i];
    CHECK(after.measure_count == before.measure_count);
    REQUIRE(after.events.size() == before.events.size());
    CHECK(pitchesOf(after) == pitchesOf(before));
    for (std::size_t e = 0; e < before.events.size(); ++e) {
      CHECK(after.events[e].duration == before.events[e].duration);
      CHECK(after.events[e].measure_index == before.events[e].measure_index);
      CHECK(after.events[e].tie_start == before.events[e].tie_start);
      CHECK(after.events[e].tie_stop == before.events[e].tie_stop);
    }
  }
}

TEST_CASE("transposing instrument gets a written key and transpose data") {
  // Concert Eb piece on an Eb instrument: written key is C major.
  ScoreDocument doc =
      loadMusicXml(makeMusicXml(-3, 1, {{"Eb4:1 G4:1 Bb4:1 Eb5:1"}}));
  SlotList slots = makeSlots({makeInstrument("alto-sax", "Db3", "Bb5", 3)});
  std::string out = saveMusicXml(identityResult(doc.piece), doc, slots);

  CHECK(out.find("<fifths>0</fifths>") != std::string::npos);
  CHECK(out.find("<chromatic>-9</chromatic>") != std::string::npos);
  CHECK(out.find("<diatonic>-5</diatonic>") != std::string::npos);

  // Written pitch minus the chromatic offset is the sounding pitch.
  ScoreDocument written = loadMusicXml(out);
  for (std::size_t e = 0; e < doc.piece.parts[0].events.size(); ++e) {
    CHECK(written.piece.parts[0].events[e].pitch->value - 9 ==
          doc.piece.parts[0].events[e].pitch->value);
  }
}

TEST_CASE("parts are emitted in slot order with numbered duplicates") {
  ScoreDocument doc = loadMusicXml(
      makeMusicXml(0, 1, {{"C5:4"}, {"E4:4"}, {"C3:4"}}));
  Instrument tenor = makeInstrument("tenor-sax", "A0", "C8");
  tenor.display_name = "TenorSaxophone";
  Instrument cello = makeInstrument("cello", "A0", "C8");
  cello.display_name = "Violoncello";
  cello.clef = "bass";
  SlotList slots = makeSlots({tenor, tenor, cello});

  ArrangementResult result = identityResult(doc.piece);
  result.assignment = {1, 0, 2};  // first part plays the second tenor slot
  std::string out = saveMusicXml(result, doc, slots);

  CHECK(out.find("TenorSaxophone 1") != std::string::npos);
  CHECK(out.find("TenorSaxophone 2") != std::string::npos);
  CHECK(out.find("<sign>F</sign>") != std::string::npos);

  ScoreDocument reloaded = loadMusicXml(out);
  REQUIRE(reloaded.piece.parts.size() == 3);
  // Slot 0 now carries the original second part (E4), slot 1 the first.
  CHECK(reloaded.piece.parts[0].events[0].pitch->value == 44);
  CHECK(reloaded.piece.parts[1].events[0].pitch->value == 52);
  CHECK(reloaded.piece.parts[2].events[0].pitch->value == 28);
}
