#include "votepower/senate.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "votepower/errors.hpp"

namespace votepower {

std::string_view bloc_name(Bloc bloc) noexcept {
  switch (bloc) {
    case Bloc::Concertacion: return "Concertacion";
    case Bloc::OutOfPact: return "OutOfPact";
    case Bloc::Alianza: return "Alianza";
  }
  return "?";
}

Bloc parse_bloc(std::string_view name) {
  if (name == "Concertacion") return Bloc::Concertacion;
  if (name == "OutOfPact") return Bloc::OutOfPact;
  if (name == "Alianza") return Bloc::Alianza;
  raise(Errc::ParseError, "unknown coalition '" + std::string(name) +
                              "' (expected Concertacion, OutOfPact or Alianza)");
}

std::string_view level_name(Level level) noexcept {
  return level == Level::Party ? "party" : "coalition";
}

Level parse_level(std::string_view name) {
  if (name == "party" || name == "parties") return Level::Party;
  if (name == "coalition" || name == "coalitions") return Level::Coalition;
  raise(Errc::ParseError,
        "unknown level '" + std::string(name) + "' (expected party or coalition)");
}

YearMonth YearMonth::parse(std::string_view text) {
  const auto bad = [&] {
    raise(Errc::ParseError, "bad date '" + std::string(text) + "', expected YYYY-MM");
  };
  if (text.size() != 7 || text[4] != '-') bad();
  int year = 0, month = 0;
  auto r1 = std::from_chars(text.data(), text.data() + 4, year);
  auto r2 = std::from_chars(text.data() + 5, text.data() + 7, month);
  if (r1.ec != std::errc{} || r2.ec != std::errc{} || month < 1 || month > 12) bad();
  return YearMonth{year, month};
}

std::string YearMonth::str() const {
  char buf[8];
  std::snprintf(buf, sizeof buf, "%04d-%02d", year, month);
  return buf;
}

std::string YearMonth::short_str() const {
  char buf[8];
  std::snprintf(buf, sizeof buf, "%02d/%02d", month, year % 100);
  return buf;
}

std::string SubperiodRecord::label() const {
  return start.short_str() + "-" + end.short_str();
}

namespace {

// Minimal CSV split with double-quote escaping; enough for the bundled
// schema, where only the event reasons carry commas.
std::vector<std::string> split_csv_line(const std::string& line, int line_no) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  if (quoted)
    raise(Errc::ParseError, "line " + std::to_string(line_no) + ": unterminated quote");
  fields.push_back(std::move(cur));
  return fields;
}

std::vector<std::vector<std::string>> read_csv(std::istream& in, std::string_view header,
                                               std::string_view what) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  int line_no = 0;
  bool saw_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || (line.size() == 1 && line[0] == '\r')) continue;
    auto fields = split_csv_line(line, line_no);
    if (!saw_header) {
      std::string joined;
      for (size_t i = 0; i < fields.size(); ++i) {
        if (i) joined += ',';
        joined += fields[i];
      }
      if (joined != header)
        raise(Errc::ParseError, std::string(what) + ": unexpected header '" + joined +
                                    "', expected '" + std::string(header) + "'");
      saw_header = true;
      continue;
    }
    rows.push_back(std::move(fields));
  }
  if (!saw_header) raise(Errc::ParseError, std::string(what) + ": empty input");
  return rows;
}

long long parse_count(const std::string& token, std::string_view what, int row_no) {
  long long value = 0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc{} || ptr != token.data() + token.size())
    raise(Errc::ParseError, std::string(what) + " row " + std::to_string(row_no) +
                                ": bad number '" + token + "'");
  return value;
}

constexpr std::string_view kSeatHeader =
    "start,end,period,MAS,PS,PRSD,PPD,IND_CL,DC,IND_C,DRP,SA,AMP,CH1,PRI,UCC,IND_R,RN,"
    "UDI,total";
constexpr std::array<std::string_view, kPartyColumns> kSeatHeaderParties = {
    "MAS", "PS",  "PRSD", "PPD", "IND_CL", "DC",    "IND_C", "DRP",
    "SA",  "AMP", "CH1",  "PRI", "UCC",    "IND_R", "RN",    "UDI"};

}  // namespace

SenateDataset SenateDataset::load(std::istream& seats, std::istream& parties,
                                  std::istream& events, bool strict_events) {
  SenateDataset ds;

  // --- party metadata ---------------------------------------------------
  const auto party_rows = read_csv(parties, "abbr,name,coalition,spectrum_order", "parties");
  if (party_rows.size() != kPartyColumns)
    raise(Errc::ParseError, "parties: expected " + std::to_string(kPartyColumns) +
                                " rows, got " + std::to_string(party_rows.size()));
  ds.columns_.resize(kPartyColumns);
  std::vector<bool> seen(kPartyColumns + 1, false);
  for (size_t r = 0; r < party_rows.size(); ++r) {
    const auto& row = party_rows[r];
    if (row.size() != 4)
      raise(Errc::ParseError, "parties row " + std::to_string(r + 1) + ": expected 4 fields");
    PartyColumn col;
    col.abbr = row[0];
    col.name = row[1];
    col.coalition = parse_bloc(row[2]);
    col.spectrum_order = static_cast<int>(parse_count(row[3], "parties", static_cast<int>(r + 1)));
    if (col.spectrum_order < 1 || col.spectrum_order > kPartyColumns ||
        seen[static_cast<size_t>(col.spectrum_order)])
      raise(Errc::ParseError, "parties: spectrum_order must be a permutation of 1.." +
                                  std::to_string(kPartyColumns));
    seen[static_cast<size_t>(col.spectrum_order)] = true;
    ds.columns_[static_cast<size_t>(col.spectrum_order - 1)] = std::move(col);
  }
  for (int i = 0; i < kPartyColumns; ++i)
    if (ds.columns_[static_cast<size_t>(i)].abbr != kSeatHeaderParties[static_cast<size_t>(i)])
      raise(Errc::ParseError, "parties: spectrum position " + std::to_string(i + 1) +
                                  " is '" + ds.columns_[static_cast<size_t>(i)].abbr +
                                  "' but the seat schema expects '" +
                                  std::string(kSeatHeaderParties[static_cast<size_t>(i)]) + "'");

  // --- seat records -------------------------------------------------------
  const auto seat_rows = read_csv(seats, kSeatHeader, "seats");
  if (seat_rows.empty()) raise(Errc::ParseError, "seats: no records");
  for (size_t r = 0; r < seat_rows.size(); ++r) {
    const auto& row = seat_rows[r];
    const int row_no = static_cast<int>(r + 1);
    if (row.size() != 4 + kPartyColumns)
      raise(Errc::ParseError, "seats row " + std::to_string(row_no) + ": expected " +
                                  std::to_string(4 + kPartyColumns) + " fields");
    SubperiodRecord rec;
    rec.start = YearMonth::parse(row[0]);
    rec.end = YearMonth::parse(row[1]);
    rec.legislative_period = static_cast<int>(parse_count(row[2], "seats", row_no));
    long long sum = 0;
    for (int c = 0; c < kPartyColumns; ++c) {
      const long long v = parse_count(row[static_cast<size_t>(3 + c)], "seats", row_no);
      if (v < 0)
        raise(Errc::ParseError,
              "seats row " + std::to_string(row_no) + ": negative seat count");
      rec.seats[static_cast<size_t>(c)] = v;
      sum += v;
    }
    rec.total = parse_count(row.back(), "seats", row_no);
    if (rec.total != sum)
      raise(Errc::TotalMismatch, "seats row " + std::to_string(row_no) + " (" + rec.label() +
                                     "): total " + std::to_string(rec.total) +
                                     " but seats sum to " + std::to_string(sum));
    if (rec.end <= rec.start)
      raise(Errc::ChronologyError,
            "seats row " + std::to_string(row_no) + ": end does not follow start");
    if (!ds.records_.empty()) {
      const auto& prev = ds.records_.back();
      if (rec.start < prev.end)
        raise(Errc::ChronologyError, "seats row " + std::to_string(row_no) +
                                         ": overlaps the previous record");
      if (rec.seats == prev.seats)
        raise(Errc::ChronologyError, "seats row " + std::to_string(row_no) +
                                         ": identical to the previous record");
    }
    ds.records_.push_back(std::move(rec));
  }

  // --- change events ------------------------------------------------------
  const auto event_rows = read_csv(events, "start,reason,deltas", "events");
  for (size_t r = 0; r < event_rows.size(); ++r) {
    const auto& row = event_rows[r];
    const int row_no = static_cast<int>(r + 1);
    if (row.size() != 3)
      raise(Errc::ParseError, "events row " + std::to_string(row_no) + ": expected 3 fields");
    ChangeEvent ev;
    ev.start = YearMonth::parse(row[0]);
    ev.reason = row[1];
    std::string_view rest = row[2];
    while (!rest.empty()) {
      const auto semi = rest.find(';');
      const std::string_view token = rest.substr(0, semi);
      const auto colon = token.find(':');
      if (colon == std::string_view::npos || colon + 1 >= token.size() ||
          (token[colon + 1] != '+' && token[colon + 1] != '-'))
        raise(Errc::ParseError, "events row " + std::to_string(row_no) +
                                    ": bad delta token '" + std::string(token) + "'");
      const std::string abbr(token.substr(0, colon));
      const bool known = std::any_of(ds.columns_.begin(), ds.columns_.end(),
                                     [&](const PartyColumn& c) { return c.abbr == abbr; });
      if (!known)
        raise(Errc::ParseError, "events row " + std::to_string(row_no) +
                                    ": unknown party '" + abbr + "'");
      const bool negative = token[colon + 1] == '-';
      const long long magnitude =
          parse_count(std::string(token.substr(colon + 2)), "events", row_no);
      if (magnitude == 0)
        raise(Errc::ParseError,
              "events row " + std::to_string(row_no) + ": zero delta for " + abbr);
      ev.deltas.emplace_back(abbr, negative ? -magnitude : magnitude);
      if (semi == std::string_view::npos) break;
      rest = rest.substr(semi + 1);
    }
    ds.events_.push_back(std::move(ev));
  }

  // --- event reconciliation (advisory unless strict) ----------------------
  const auto complain = [&](const std::string& message) {
    if (strict_events) raise(Errc::EventMismatch, message);
    ds.warnings_.push_back(message);
  };
  for (size_t r = 0; r < ds.records_.size(); ++r) {
    const auto& rec = ds.records_[r];
    const auto ev = std::find_if(ds.events_.begin(), ds.events_.end(),
                                 [&](const ChangeEvent& e) { return e.start == rec.start; });
    if (ev == ds.events_.end()) {
      complain("no change event annotates subperiod " + rec.label());
      continue;
    }
    std::array<long long, kPartyColumns> expected{};
    if (r > 0)
      for (int c = 0; c < kPartyColumns; ++c)
        expected[static_cast<size_t>(c)] =
            rec.seats[static_cast<size_t>(c)] - ds.records_[r - 1].seats[static_cast<size_t>(c)];
    std::array<long long, kPartyColumns> annotated{};
    for (const auto& [abbr, delta] : ev->deltas) {
      for (int c = 0; c < kPartyColumns; ++c)
        if (ds.columns_[static_cast<size_t>(c)].abbr == abbr)
          annotated[static_cast<size_t>(c)] += delta;
    }
    if (annotated != expected)
      complain("event at " + rec.start.str() + " does not reconcile the seat change of " +
               rec.label());
  }
  for (const auto& ev : ds.events_) {
    const bool matches =
        std::any_of(ds.records_.begin(), ds.records_.end(),
                    [&](const SubperiodRecord& rec) { return rec.start == ev.start; });
    if (!matches) complain("event at " + ev.start.str() + " matches no subperiod");
  }

  return ds;
}

SenateDataset SenateDataset::load_strings(std::string_view seats_csv,
                                          std::string_view parties_csv,
                                          std::string_view events_csv, bool strict_events) {
  std::istringstream seats{std::string(seats_csv)};
  std::istringstream parties{std::string(parties_csv)};
  std::istringstream events{std::string(events_csv)};
  return load(seats, parties, events, strict_events);
}

SenateDataset SenateDataset::load_files(const std::string& seats_path,
                                        const std::string& parties_path,
                                        const std::string& events_path, bool strict_events) {
  const auto open = [](const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(Errc::ParseError, "cannot open '" + path + "'");
    return in;
  };
  auto seats = open(seats_path);
  auto parties = open(parties_path);
  auto events = open(events_path);
  return load(seats, parties, events, strict_events);
}

SenateDataset SenateDataset::bundled(bool strict_events) {
  return load_strings(bundled_seats_csv(), bundled_parties_csv(), bundled_events_csv(),
                      strict_events);
}

int SenateDataset::find_subperiod(std::string_view key) const {
  for (size_t i = 0; i < records_.size(); ++i) {
    const auto& rec = records_[i];
    if (rec.label() == key || rec.start.str() == key) return static_cast<int>(i);
  }
  raise(Errc::UnknownSubperiod, "no subperiod matches '" + std::string(key) + "'");
}

int SenateDataset::find_party(std::string_view abbr) const {
  for (size_t i = 0; i < columns_.size(); ++i)
    if (columns_[i].abbr == abbr) return static_cast<int>(i);
  raise(Errc::UnknownParty, "no party column '" + std::string(abbr) + "'");
}

WeightedVotingGame SenateDataset::party_game(int subperiod, LawType law) const {
  if (subperiod < 0 || subperiod >= static_cast<int>(records_.size()))
    raise(Errc::UnknownSubperiod, "subperiod index " + std::to_string(subperiod));
  const auto& rec = records_[static_cast<size_t>(subperiod)];
  std::vector<long long> weights(rec.seats.begin(), rec.seats.end());
  std::vector<std::string> labels;
  labels.reserve(columns_.size());
  for (const auto& c : columns_) labels.push_back(c.abbr);
  return WeightedVotingGame(quota_for(law, rec.total), std::move(weights), std::move(labels));
}

std::array<long long, 3> SenateDataset::bloc_weights(int subperiod) const {
  if (subperiod < 0 || subperiod >= static_cast<int>(records_.size()))
    raise(Errc::UnknownSubperiod, "subperiod index " + std::to_string(subperiod));
  const auto& rec = records_[static_cast<size_t>(subperiod)];
  std::array<long long, 3> sums{};
  for (int c = 0; c < kPartyColumns; ++c)
    sums[static_cast<size_t>(columns_[static_cast<size_t>(c)].coalition)] +=
        rec.seats[static_cast<size_t>(c)];
  return sums;
}

WeightedVotingGame SenateDataset::coalition_game(int subperiod, LawType law) const {
  const auto sums = bloc_weights(subperiod);
  const auto& rec = records_[static_cast<size_t>(subperiod)];
  std::vector<std::string> labels;
  for (Bloc b : kAllBlocs) labels.emplace_back(bloc_name(b));
  return WeightedVotingGame(quota_for(law, rec.total), {sums[0], sums[1], sums[2]},
                            std::move(labels));
}

std::vector<GameInstance> SenateDataset::all_games() const {
  std::vector<GameInstance> games;
  games.reserve(records_.size() * kAllLaws.size() * 2);
  for (int r = 0; r < static_cast<int>(records_.size()); ++r)
    for (LawType law : kAllLaws) {
      games.push_back({r, law, Level::Party, party_game(r, law)});
      games.push_back({r, law, Level::Coalition, coalition_game(r, law)});
    }
  return games;
}

std::vector<Series> SenateDataset::timeline(IndexKind index, LawType law, Level level) const {
  std::vector<Series> series;
  if (level == Level::Party) {
    series.resize(columns_.size());
    for (size_t c = 0; c < columns_.size(); ++c) series[c].label = columns_[c].abbr;
  } else {
    series.resize(kAllBlocs.size());
    for (size_t b = 0; b < kAllBlocs.size(); ++b)
      series[b].label = std::string(bloc_name(kAllBlocs[b]));
  }
  for (int r = 0; r < static_cast<int>(records_.size()); ++r) {
    const auto game =
        level == Level::Party ? party_game(r, law) : coalition_game(r, law);
    const PowerVector pv = compute_index(game, index);
    for (size_t v = 0; v < pv.values.size(); ++v)
      series[v].values.push_back(to_double(pv.values[v]));
  }
  return series;
}

std::vector<PairCorrelation> SenateDataset::correlate_parties(
    IndexKind index, LawType law, CorrelationMethod method, double alpha,
    PValueMethod pvalues) const {
  const auto series = timeline(index, law, Level::Party);
  std::vector<PairCorrelation> out;
  out.reserve(series.size() * (series.size() - 1) / 2);
  for (size_t i = 0; i < series.size(); ++i)
    for (size_t j = i + 1; j < series.size(); ++j)
      out.push_back(
          {series[i].label, series[j].label, correlate(method, series[i], series[j], alpha, pvalues)});
  return out;
}

std::vector<PairCorrelation> SenateDataset::correlate_quorums(
    IndexKind index, std::string_view party_abbr, CorrelationMethod method, double alpha,
    PValueMethod pvalues) const {
  const int party = find_party(party_abbr);
  std::array<Series, 4> by_law;
  for (size_t l = 0; l < kAllLaws.size(); ++l) {
    const auto series = timeline(index, kAllLaws[l], Level::Party);
    by_law[l] = series[static_cast<size_t>(party)];
    by_law[l].label = std::string(law_id(kAllLaws[l]));
  }
  std::vector<PairCorrelation> out;
  for (size_t i = 0; i < by_law.size(); ++i)
    for (size_t j = i + 1; j < by_law.size(); ++j)
      out.push_back(
          {by_law[i].label, by_law[j].label, correlate(method, by_law[i], by_law[j], alpha, pvalues)});
  return out;
}

}  // namespace votepower
