#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "spir/constructions.hpp"
#include "spir/error.hpp"
#include "spir/graph.hpp"
#include "spir/serialize.hpp"
#include "spir/verifier.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;        // usage, I/O, parse, enumeration-size errors
constexpr int kExitCheckFailed = 2;  // a verification check reported fail

spir::Scheme load_scheme(const std::string& file, const std::string& canonical) {
  if (file.empty() && canonical.empty())
    throw spir::Error("provide a scheme file or --canonical NAME");
  if (!file.empty() && !canonical.empty())
    throw spir::Error("provide either a scheme file or --canonical, not both");
  if (!canonical.empty()) return spir::canonical_scheme(spir::parse_canonical(canonical));
  std::ifstream in(file);
  if (!in) throw spir::Error("cannot read '" + file + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return spir::parse_scheme(buffer.str());
}

void write_output(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path);
  if (!out) throw spir::Error("cannot write '" + out_path + "'");
  out << text;
}

std::string short_float(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

std::string long_float(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string text_report(const spir::VerificationReport& r) {
  std::ostringstream out;
  out << "scheme: " << r.scheme_name << "\n";
  auto line = [&](const char* key, const spir::CheckResult& c) {
    out << key << ": " << (c.pass ? "pass" : "fail") << "\n";
    if (!c.pass) out << key << "-witness: " << c.witness << "\n";
  };
  line("reliability", r.reliability);
  line("user-privacy-db1", r.user_privacy_db1);
  line("user-privacy-db2", r.user_privacy_db2);
  line("database-privacy", r.database_privacy);
  out << "upload-bits: " << short_float(r.upload_bits) << "\n";
  out << "download-bits: " << short_float(r.download_bits) << "\n";
  out << "randomness-bits: " << short_float(r.randomness_bits) << "\n";
  return out.str();
}

int run_verify(const std::string& file, const std::string& canonical, const std::string& format,
               const std::string& out_path) {
  spir::Scheme s = load_scheme(file, canonical);
  spir::VerificationReport r = spir::full_report(s);
  write_output(out_path, format == "machine" ? spir::emit_report(r) : text_report(r));
  return r.all_pass() ? kExitOk : kExitCheckFailed;
}

int run_double(const std::string& file, const std::string& canonical,
               const std::string& out_path) {
  spir::Scheme s = load_scheme(file, canonical);
  write_output(out_path, spir::emit_scheme(spir::double_scheme(s)));
  return kExitOk;
}

int run_repeat(const std::string& file, const std::string& canonical, int copies,
               const std::string& out_path) {
  spir::Scheme s = load_scheme(file, canonical);
  write_output(out_path, spir::emit_scheme(spir::repeat_scheme(s, copies)));
  return kExitOk;
}

int run_graph(const std::string& file, const std::string& canonical,
              const std::string& out_path) {
  spir::Scheme s = load_scheme(file, canonical);
  write_output(out_path, spir::export_dot(spir::graph_from_scheme(s), s.name()));
  return kExitOk;
}

int run_region(int k, int l, const std::string& out_path) {
  std::ostringstream csv;
  csv << "upload_bits,download_bits,total_bits,witness_scheme\n";
  for (const auto& p : spir::region_points(k, l))
    csv << long_float(p.upload_bits) << ',' << long_float(p.download_bits) << ','
        << long_float(p.total_bits) << ',' << p.witness_scheme << "\n";
  write_output(out_path, csv.str());
  return kExitOk;
}

int run_decode_table(const std::string& file, const std::string& canonical, int k,
                     const std::string& out_path) {
  spir::Scheme s = load_scheme(file, canonical);
  if (k < 1 || k > s.message_count())
    throw spir::Error("--k must be between 1 and " + std::to_string(s.message_count()));

  spir::DecodeTable table;
  try {
    table = spir::build_decode_table(s, k);
  } catch (const spir::EnumerationLimitError&) {
    throw;
  } catch (const spir::Error& e) {
    std::cerr << e.what() << "\n";
    return kExitCheckFailed;
  }

  const std::uint32_t q = s.modulus().value();
  auto tuple = [&](const std::vector<std::uint32_t>& v) {
    std::string t = "(";
    for (std::size_t i = 0; i < v.size(); ++i)
      t += (i ? "," : "") + std::to_string(v[i]);
    return t + ")";
  };
  std::ostringstream out;
  out << "scheme: " << s.name() << "\n";
  out << "message: " << k << "\n";
  for (const auto& e : table.entries) {
    auto [x, y] = s.strategy().pairs()[k - 1][e.pair_index];
    std::uint32_t value = e.message_value;
    std::vector<std::uint32_t> symbols(s.message_length());
    for (auto& sym : symbols) {
      sym = value % q;
      value /= q;
    }
    out << "pair " << s.strategy().space_x()[x] << ',' << s.strategy().space_y()[y]
        << ": A1=" << tuple(e.answer1) << " A2=" << tuple(e.answer2) << " -> W" << k << '='
        << tuple(symbols) << "\n";
  }
  write_output(out_path, out.str());
  return kExitOk;
}

int run_list_canonical() {
  for (spir::CanonicalName name : spir::list_canonical())
    std::cout << spir::format_canonical(name) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-database symmetric private information retrieval toolkit"};
  app.require_subcommand(1);

  std::string file, canonical, format = "text", out_path;
  int k_flag = 0, l_flag = 1;

  auto add_input = [&](CLI::App* cmd) {
    cmd->add_option("file", file, "scheme document to load");
    cmd->add_option("--canonical", canonical, "built-in scheme name (see list-canonical)");
    cmd->add_option("--out", out_path, "write output to this file instead of stdout");
  };

  CLI::App* verify = app.add_subcommand("verify", "run all checks and print a report");
  add_input(verify);
  verify->add_option("--format", format, "report format: text or machine")
      ->check(CLI::IsMember({"text", "machine"}));

  CLI::App* dbl = app.add_subcommand("double", "emit the message-count-doubled scheme");
  add_input(dbl);

  CLI::App* repeat = app.add_subcommand("repeat", "emit the L-fold repeated scheme");
  add_input(repeat);
  repeat->add_option("--l", l_flag, "number of copies")->required();

  CLI::App* graph = app.add_subcommand("graph", "emit the colored retrieval graph as DOT");
  add_input(graph);

  CLI::App* region = app.add_subcommand("region", "emit achievable cost corner points as CSV");
  region->add_option("--k", k_flag, "message count")->required();
  region->add_option("--l", l_flag, "message length");
  region->add_option("--out", out_path, "write output to this file instead of stdout");

  CLI::App* decode = app.add_subcommand("decode-table", "materialize the decoder for one index");
  add_input(decode);
  decode->add_option("--k", k_flag, "message index to decode")->required();

  app.add_subcommand("list-canonical", "list built-in scheme names");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (verify->parsed()) return run_verify(file, canonical, format, out_path);
    if (dbl->parsed()) return run_double(file, canonical, out_path);
    if (repeat->parsed()) return run_repeat(file, canonical, l_flag, out_path);
    if (graph->parsed()) return run_graph(file, canonical, out_path);
    if (region->parsed()) return run_region(k_flag, l_flag, out_path);
    if (decode->parsed()) return run_decode_table(file, canonical, k_flag, out_path);
    return run_list_canonical();
  } catch (const spir::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
