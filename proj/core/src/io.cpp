#include "psymet/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <tuple>

#include <nlohmann/json.hpp>

#include "psymet/csv.hpp"
#include "psymet/errors.hpp"

namespace psymet {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

bool has_extension(const std::string& path, const std::string& ext) {
  auto e = fs::path(path).extension().string();
  std::transform(e.begin(), e.end(), e.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return e == ext;
}

bool parse_bool(const std::string& text, const std::string& where) {
  const std::string norm = normalize_label(text);
  if (norm.empty() || norm == "false" || norm == "0" || norm == "no") return false;
  if (norm == "true" || norm == "1" || norm == "yes") return true;
  throw SchemaError(where + ": cannot parse boolean '" + text + "'");
}

json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
  return j;
}

GoldLabel require_gold_label(const std::string& text, const std::string& where) {
  auto parsed = parse_gold_label(text);
  if (!parsed) throw SchemaError(where + ": unknown gold_label '" + text + "'");
  return *parsed;
}

std::vector<std::string> split_keys(const std::string& joined) {
  std::vector<std::string> keys;
  std::string cur;
  for (char c : joined) {
    if (c == ';') {
      if (!cur.empty()) keys.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) keys.push_back(cur);
  return keys;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

GoldLabel next_label(GoldLabel g) {
  switch (g) {
    case GoldLabel::entailment: return GoldLabel::contradiction;
    case GoldLabel::contradiction: return GoldLabel::neutral;
    case GoldLabel::neutral: return GoldLabel::entailment;
  }
  return GoldLabel::entailment;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

ItemBank load_item_bank(const std::string& path) {
  std::vector<Item> items;
  if (has_extension(path, ".json")) {
    const json j = load_json_file(path);
    if (!j.is_array()) throw SchemaError(path + ": item bank JSON must be an array");
    for (const auto& e : j) {
      Item item;
      item.item_id = e.at("item_id").get<std::string>();
      item.category = e.at("category").get<std::string>();
      item.gold_label = require_gold_label(e.at("gold_label").get<std::string>(),
                                           path + " item " + item.item_id);
      item.premise = e.value("premise", "");
      item.hypothesis = e.value("hypothesis", "");
      item.is_attention_check = e.value("is_attention_check", false);
      items.push_back(std::move(item));
    }
    return ItemBank(std::move(items));
  }

  const CsvTable t = read_csv_file(path);
  const int c_id = t.column("item_id"), c_cat = t.column("category");
  const int c_gold = t.column("gold_label");
  const int c_prem = t.column("premise"), c_hyp = t.column("hypothesis");
  const int c_att = t.column("is_attention_check");
  if (c_id < 0 || c_cat < 0 || c_gold < 0) {
    throw SchemaError(path + ": item bank needs columns item_id, category, gold_label");
  }
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    const std::string where = path + ":" + std::to_string(t.line_numbers[r]);
    Item item;
    item.item_id = row[c_id];
    item.category = row[c_cat];
    item.gold_label = require_gold_label(row[c_gold], where);
    if (c_prem >= 0) item.premise = row[c_prem];
    if (c_hyp >= 0) item.hypothesis = row[c_hyp];
    if (c_att >= 0) item.is_attention_check = parse_bool(row[c_att], where);
    items.push_back(std::move(item));
  }
  return ItemBank(std::move(items));
}

namespace {

struct RecordKey {
  std::string population;
  std::string respondent;
  int submission;
  auto operator<=>(const RecordKey&) const = default;
};

std::vector<RawRecord> records_from_rows(
    const std::vector<std::tuple<RecordKey, PopulationKind, std::string, std::string,
                                 std::string, std::vector<std::string>, std::string>>& rows) {
  // tuple: key, kind, item_id, label, justification, identity_keys, where
  std::map<RecordKey, RawRecord> grouped;
  for (const auto& [key, kind, item_id, label, justification, identity, where] : rows) {
    RawRecord& rec = grouped[key];
    if (rec.respondent_id.empty()) {
      rec.respondent_id = key.respondent;
      rec.population = {key.population, kind};
      rec.submission_index = key.submission;
      rec.identity_keys.push_back("rid:" + key.respondent);
    } else if (rec.population.kind != kind) {
      throw SchemaError(where + ": population '" + key.population +
                        "' declared with two different kinds");
    }
    rec.identity_keys.insert(rec.identity_keys.end(), identity.begin(), identity.end());
    auto [it, inserted] = rec.answers.emplace(item_id, label);
    if (!inserted && normalize_label(it->second) != normalize_label(label)) {
      throw SchemaError(where + ": conflicting answers for respondent '" + key.respondent +
                        "' item '" + item_id + "'");
    }
    if (!justification.empty()) rec.justifications[item_id] = justification;
  }
  std::vector<RawRecord> out;
  out.reserve(grouped.size());
  for (auto& [key, rec] : grouped) {
    std::sort(rec.identity_keys.begin(), rec.identity_keys.end());
    rec.identity_keys.erase(std::unique(rec.identity_keys.begin(), rec.identity_keys.end()),
                            rec.identity_keys.end());
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace

std::vector<RawRecord> load_responses(const std::string& path) {
  std::vector<std::tuple<RecordKey, PopulationKind, std::string, std::string, std::string,
                         std::vector<std::string>, std::string>>
      rows;

  if (has_extension(path, ".json")) {
    const json j = load_json_file(path);
    if (!j.is_array()) throw SchemaError(path + ": responses JSON must be an array");
    std::vector<RawRecord> out;
    for (const auto& e : j) {
      RawRecord rec;
      rec.respondent_id = e.at("respondent_id").get<std::string>();
      const std::string pop = e.at("population").get<std::string>();
      PopulationKind kind = PopulationKind::proxy;
      if (e.contains("population_kind")) {
        auto parsed = parse_population_kind(e["population_kind"].get<std::string>());
        if (!parsed) throw SchemaError(path + ": unknown population_kind");
        kind = *parsed;
      }
      rec.population = {pop, kind};
      rec.submission_index = e.value("submission_index", 0);
      if (e.contains("identity_keys")) {
        rec.identity_keys = e["identity_keys"].get<std::vector<std::string>>();
      }
      rec.identity_keys.push_back("rid:" + rec.respondent_id);
      std::sort(rec.identity_keys.begin(), rec.identity_keys.end());
      rec.identity_keys.erase(
          std::unique(rec.identity_keys.begin(), rec.identity_keys.end()),
          rec.identity_keys.end());
      for (const auto& [item, label] : e.at("answers").items()) {
        rec.answers[item] = label.get<std::string>();
      }
      if (e.contains("justifications")) {
        for (const auto& [item, text] : e["justifications"].items()) {
          rec.justifications[item] = text.get<std::string>();
        }
      }
      out.push_back(std::move(rec));
    }
    return out;
  }

  const CsvTable t = read_csv_file(path);
  if (t.header.empty() && t.rows.empty()) return {};  // zero-byte file: no records
  const int c_resp = t.column("respondent_id"), c_pop = t.column("population");
  const int c_item = t.column("item_id"), c_label = t.column("label");
  const int c_just = t.column("justification"), c_sub = t.column("submission_index");
  const int c_keys = t.column("identity_keys"), c_kind = t.column("population_kind");
  if (c_resp < 0 || c_pop < 0 || c_item < 0 || c_label < 0) {
    throw SchemaError(path +
                      ": responses need columns respondent_id, population, item_id, label");
  }
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    const std::string where = path + ":" + std::to_string(t.line_numbers[r]);
    int submission = 0;
    if (c_sub >= 0 && !row[c_sub].empty()) {
      try {
        submission = std::stoi(row[c_sub]);
      } catch (const std::exception&) {
        throw SchemaError(where + ": bad submission_index '" + row[c_sub] + "'");
      }
    }
    PopulationKind kind = PopulationKind::proxy;
    if (c_kind >= 0 && !row[c_kind].empty()) {
      auto parsed = parse_population_kind(row[c_kind]);
      if (!parsed) throw SchemaError(where + ": unknown population_kind '" + row[c_kind] + "'");
      kind = *parsed;
    }
    rows.emplace_back(RecordKey{row[c_pop], row[c_resp], submission}, kind, row[c_item],
                      row[c_label], c_just >= 0 ? row[c_just] : "",
                      c_keys >= 0 ? split_keys(row[c_keys]) : std::vector<std::string>{},
                      where);
  }
  return records_from_rows(rows);
}

std::vector<std::pair<PopulationTag, std::vector<RawRecord>>> group_by_population(
    const std::vector<RawRecord>& records) {
  std::vector<std::pair<PopulationTag, std::vector<RawRecord>>> out;
  for (const RawRecord& r : records) {
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& g) {
      return g.first.name == r.population.name;
    });
    if (it == out.end()) {
      out.push_back({r.population, {r}});
    } else {
      it->second.push_back(r);
    }
  }
  return out;
}

void atomic_write(const std::string& path, const std::string& content) {
  const fs::path target(path);
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  const fs::path tmp = target.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ConfigError("cannot write '" + tmp.string() + "'");
    out << content;
  }
  fs::rename(tmp, target);
}

std::string responses_to_csv(const std::vector<RawRecord>& records) {
  std::ostringstream out;
  write_csv_row(out, std::vector<std::string>{"respondent_id", "population", "population_kind",
                                              "submission_index", "identity_keys", "item_id",
                                              "label", "justification"});
  for (const RawRecord& r : records) {
    // The synthetic "rid:" key is reconstructed at load; don't persist it.
    std::vector<std::string> keys;
    for (const std::string& k : r.identity_keys) {
      if (k != "rid:" + r.respondent_id) keys.push_back(k);
    }
    for (const auto& [item, label] : r.answers) {
      auto jit = r.justifications.find(item);
      write_csv_row(out, std::vector<std::string>{
                             r.respondent_id, r.population.name, to_string(r.population.kind),
                             std::to_string(r.submission_index), join(keys, ";"), item, label,
                             jit == r.justifications.end() ? "" : jit->second});
    }
  }
  return out.str();
}

std::string matrix_to_response_csv(const ResponseMatrix& m, const ItemBank& bank) {
  std::ostringstream out;
  write_csv_row(out, std::vector<std::string>{"respondent_id", "population", "population_kind",
                                              "submission_index", "identity_keys", "item_id",
                                              "label", "justification"});
  for (std::size_t r = 0; r < m.n_respondents(); ++r) {
    for (std::size_t c = 0; c < m.n_items(); ++c) {
      const Cell v = m.cell(r, c);
      if (v == kMissingCell) continue;
      const Item& item = bank.at(m.item_ids()[c]);
      const GoldLabel label = v ? item.gold_label : next_label(item.gold_label);
      write_csv_row(out, std::vector<std::string>{m.respondent_ids()[r], m.population().name,
                                                  to_string(m.population().kind), "0", "",
                                                  item.item_id, to_string(label), ""});
    }
  }
  return out.str();
}

std::string audit_to_csv(const std::vector<ValidationVerdict>& verdicts) {
  std::ostringstream out;
  write_csv_row(out, std::vector<std::string>{"respondent_id", "population", "submission_index",
                                              "decision", "triggered_rules", "evidence"});
  for (const ValidationVerdict& v : verdicts) {
    std::vector<std::string> ev;
    for (const auto& [rule, text] : v.evidence) ev.push_back(rule + "=" + text);
    write_csv_row(out, std::vector<std::string>{v.respondent_id, v.population,
                                                std::to_string(v.submission_index),
                                                to_string(v.decision),
                                                join(v.triggered_rules, ";"), join(ev, " | ")});
  }
  return out.str();
}

std::string audit_to_json(const std::vector<ValidationVerdict>& verdicts) {
  json arr = json::array();
  for (const ValidationVerdict& v : verdicts) {
    arr.push_back({{"respondent_id", v.respondent_id},
                   {"population", v.population},
                   {"submission_index", v.submission_index},
                   {"decision", to_string(v.decision)},
                   {"triggered_rules", v.triggered_rules},
                   {"evidence", v.evidence}});
  }
  return arr.dump(2) + "\n";
}

std::string difficulty_to_csv(const DifficultyVector& d) {
  std::ostringstream out;
  write_csv_row(out, std::vector<std::string>{"item_id", "population", "kind", "value"});
  for (std::size_t i = 0; i < d.item_ids.size(); ++i) {
    write_csv_row(out, std::vector<std::string>{d.item_ids[i], d.population.name,
                                                to_string(d.kind), format_double(d.values[i])});
  }
  return out.str();
}

std::string correlation_to_csv(const CorrelationMatrix& c) {
  std::ostringstream out;
  std::vector<std::string> header{"item_id"};
  header.insert(header.end(), c.item_ids().begin(), c.item_ids().end());
  write_csv_row(out, header);
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::vector<std::string> row{c.item_ids()[i]};
    for (std::size_t j = 0; j < c.size(); ++j) {
      row.push_back(c.is_defined(i, j) ? format_double(c.at(i, j)) : "");
    }
    write_csv_row(out, row);
  }
  return out.str();
}

std::string correlation_counts_to_csv(const CorrelationMatrix& c) {
  std::ostringstream out;
  std::vector<std::string> header{"item_id"};
  header.insert(header.end(), c.item_ids().begin(), c.item_ids().end());
  write_csv_row(out, header);
  for (std::size_t i = 0; i < c.size(); ++i) {
    std::vector<std::string> row{c.item_ids()[i]};
    for (std::size_t j = 0; j < c.size(); ++j) {
      row.push_back(std::to_string(c.pair_count(i, j)));
    }
    write_csv_row(out, row);
  }
  return out.str();
}

std::string clusters_to_csv(const ClusterAssignment& a) {
  std::ostringstream out;
  write_csv_row(out, std::vector<std::string>{"item_id", "cluster"});
  for (std::size_t i = 0; i < a.item_ids.size(); ++i) {
    write_csv_row(out, std::vector<std::string>{a.item_ids[i], std::to_string(a.labels[i])});
  }
  return out.str();
}

std::string dendrogram_to_json(const ClusterAssignment& a, const PopulationTag& population) {
  json merges = json::array();
  for (const MergeStep& m : a.trace) {
    merges.push_back(
        {{"left", m.left}, {"right", m.right}, {"height", m.height}, {"size", m.size}});
  }
  const json j = {{"population", population.name},
                  {"population_kind", to_string(population.kind)},
                  {"items", a.item_ids},
                  {"k", a.k},
                  {"linkage", "average"},
                  {"merges", merges}};
  return j.dump(2) + "\n";
}

std::string rasch_to_csv(const RaschFit& fit) {
  std::ostringstream out;
  write_csv_row(out, std::vector<std::string>{"item_id", "population", "b", "se_b"});
  for (std::size_t i = 0; i < fit.item_ids.size(); ++i) {
    write_csv_row(out, std::vector<std::string>{fit.item_ids[i], fit.population.name,
                                                format_double(fit.b[i]),
                                                format_double(fit.se_b[i])});
  }
  return out.str();
}

std::string rasch_to_json(const RaschFit& fit) {
  json items = json::array();
  for (std::size_t i = 0; i < fit.item_ids.size(); ++i) {
    items.push_back({{"item_id", fit.item_ids[i]},
                     {"b", fit.b[i]},
                     {"se_b", std::isnan(fit.se_b[i]) ? json() : json(fit.se_b[i])}});
  }
  json dropped = json::array();
  for (const DroppedItem& d : fit.dropped_items) {
    dropped.push_back({{"item_id", d.item_id}, {"reason", d.reason}});
  }
  const json j = {{"population", fit.population.name},
                  {"population_kind", to_string(fit.population.kind)},
                  {"model", "rasch_mml"},
                  {"converged", fit.converged},
                  {"iterations", fit.iterations},
                  {"log_likelihood", fit.log_likelihood},
                  {"discrimination", fit.discrimination},
                  {"discrimination_estimated", fit.discrimination_estimated},
                  {"grid_points", static_cast<int>(fit.quadrature.nodes.size())},
                  {"items", items},
                  {"dropped_items", dropped}};
  return j.dump(2) + "\n";
}

namespace {

json report_to_json(const AgreementReport& rep) {
  json rows = json::array();
  for (const AgreementRow& r : rep.rows) {
    rows.push_back({{"population", r.population.name},
                    {"population_kind", to_string(r.population.kind)},
                    {"coefficient", to_string(r.coefficient)},
                    {"n", r.n},
                    {"r", r.defined ? json(r.r) : json()},
                    {"p", r.defined ? json(r.p) : json()},
                    {"stars", r.stars},
                    {"best", r.best},
                    {"note", r.note}});
  }
  return {{"category", rep.category},
          {"reference", rep.reference.name},
          {"property", rep.property},
          {"rows", rows}};
}

std::string escape_stars(const std::string& stars) {
  std::string out;
  for (char c : stars) {
    out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string agreement_to_csv(const std::vector<AgreementReport>& reports) {
  std::ostringstream out;
  write_csv_row(out, std::vector<std::string>{"category", "property", "reference", "population",
                                              "coefficient", "n", "r", "p", "stars", "best",
                                              "note"});
  for (const AgreementReport& rep : reports) {
    for (const AgreementRow& r : rep.rows) {
      write_csv_row(out, std::vector<std::string>{
                             rep.category, rep.property, rep.reference.name, r.population.name,
                             to_string(r.coefficient), std::to_string(r.n),
                             r.defined ? format_double(r.r) : "",
                             r.defined ? format_double(r.p) : "", r.stars,
                             r.best ? "1" : "0", r.note});
    }
  }
  return out.str();
}

std::string agreement_to_json(const std::vector<AgreementReport>& reports) {
  json arr = json::array();
  for (const AgreementReport& rep : reports) arr.push_back(report_to_json(rep));
  return arr.dump(2) + "\n";
}

std::string agreement_to_markdown(const std::vector<AgreementReport>& reports,
                                  const std::string& title) {
  std::ostringstream out;
  out << "# " << title << "\n\n";
  if (reports.empty()) {
    out << "No categories analyzed.\n";
    return out.str();
  }
  out << "Reference population: " << reports.front().reference.name
      << ". Cells show the correlation with the reference; `*` p<0.05, `**` p<0.01, "
         "`***` p<0.001; the highest |r| per category is bolded.\n\n";

  // Union of proxy populations in first-appearance order.
  std::vector<std::string> pops;
  for (const AgreementReport& rep : reports) {
    for (const AgreementRow& r : rep.rows) {
      if (std::find(pops.begin(), pops.end(), r.population.name) == pops.end()) {
        pops.push_back(r.population.name);
      }
    }
  }

  out << "| Category |";
  for (const std::string& p : pops) out << ' ' << p << " |";
  out << "\n|---|";
  for (std::size_t i = 0; i < pops.size(); ++i) out << "---:|";
  out << '\n';
  for (const AgreementReport& rep : reports) {
    out << "| " << rep.category << " |";
    for (const std::string& p : pops) {
      auto it = std::find_if(rep.rows.begin(), rep.rows.end(), [&](const AgreementRow& r) {
        return r.population.name == p;
      });
      if (it == rep.rows.end()) {
        out << " n/a |";
        continue;
      }
      char buf[32];
      if (!it->defined) {
        out << " n/a |";
        continue;
      }
      std::snprintf(buf, sizeof(buf), "%.2f", it->r);
      std::string cell = escape_stars(it->stars) + buf;
      if (it->best) cell = "**" + cell + "**";
      out << ' ' << cell << " |";
    }
    out << '\n';
  }
  return out.str();
}

std::vector<AgreementReport> load_agreement_json(const std::string& path) {
  const json j = load_json_file(path);
  std::vector<AgreementReport> out;
  for (const auto& e : j) {
    AgreementReport rep;
    rep.category = e.at("category").get<std::string>();
    rep.reference.name = e.at("reference").get<std::string>();
    rep.property = e.at("property").get<std::string>();
    for (const auto& re : e.at("rows")) {
      AgreementRow row;
      row.population.name = re.at("population").get<std::string>();
      if (auto k = parse_population_kind(re.value("population_kind", "proxy"))) {
        row.population.kind = *k;
      }
      row.coefficient = re.at("coefficient").get<std::string>() == "spearman"
                            ? CoefficientKind::spearman
                            : CoefficientKind::pearson;
      row.n = re.value("n", 0);
      row.defined = !re.at("r").is_null();
      row.r = row.defined ? re.at("r").get<double>() : std::nan("");
      row.p = row.defined && !re.at("p").is_null() ? re.at("p").get<double>() : std::nan("");
      row.stars = re.value("stars", "");
      row.best = re.value("best", false);
      row.note = re.value("note", "");
      rep.rows.push_back(std::move(row));
    }
    out.push_back(std::move(rep));
  }
  return out;
}

DifficultyVector load_difficulty_csv(const std::string& path) {
  const CsvTable t = read_csv_file(path);
  const int c_item = t.column("item_id"), c_pop = t.column("population");
  const int c_kind = t.column("kind"), c_val = t.column("value");
  if (c_item < 0 || c_val < 0) {
    throw SchemaError(path + ": difficulty CSV needs item_id and value columns");
  }
  DifficultyVector d;
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    const auto& row = t.rows[r];
    if (d.item_ids.empty()) {
      if (c_pop >= 0) d.population.name = row[c_pop];
      if (c_kind >= 0 && row[c_kind] == "rasch_b") d.kind = DifficultyKind::rasch_b;
    }
    d.item_ids.push_back(row[c_item]);
    d.values.push_back(std::stod(row[c_val]));
  }
  return d;
}

std::map<std::string, int> load_clusters_csv(const std::string& path) {
  const CsvTable t = read_csv_file(path);
  const int c_item = t.column("item_id"), c_cluster = t.column("cluster");
  if (c_item < 0 || c_cluster < 0) {
    throw SchemaError(path + ": clusters CSV needs item_id and cluster columns");
  }
  std::map<std::string, int> out;
  for (const auto& row : t.rows) out[row[c_item]] = std::stoi(row[c_cluster]);
  return out;
}

std::pair<std::vector<std::string>, std::vector<double>> load_rasch_csv(
    const std::string& path) {
  const CsvTable t = read_csv_file(path);
  const int c_item = t.column("item_id"), c_b = t.column("b");
  if (c_item < 0 || c_b < 0) {
    throw SchemaError(path + ": rasch CSV needs item_id and b columns");
  }
  std::pair<std::vector<std::string>, std::vector<double>> out;
  for (const auto& row : t.rows) {
    out.first.push_back(row[c_item]);
    out.second.push_back(std::stod(row[c_b]));
  }
  return out;
}

}  // namespace psymet
