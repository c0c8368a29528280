#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(CTXBOOK_CLI) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  std::array<char, 4096> buf{};
  while (auto n = fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

struct TempDir {
  std::filesystem::path path;
  TempDir() : path(std::filesystem::temp_directory_path() / ("ctxbook_cli_" + std::to_string(getpid()))) {
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name, const std::string& text = "") const {
    const auto p = path / name;
    if (!text.empty()) std::ofstream(p) << text;
    return p.string();
  }
};

const char* kSignaling = R"({
  "schema_version": 1,
  "kind": "empirical_model",
  "scenario": {"measurements": ["a", "b", "c"], "outcomes": ["0", "1"], "maximal_contexts": [["a", "b"], ["b", "c"]]},
  "tables": {
    "a,b": {"a=0,b=0": "1/2", "a=1,b=1": "1/2"},
    "b,c": {"b=0,c=0": "1/4", "b=1,c=1": "3/4"}
  }
}
)";

}  // namespace

using Catch::Matchers::ContainsSubstring;

TEST_CASE("cli_classify_bell", "[cli]") {
  const auto r = run("classify bell");
  CHECK(r.code == 0);
  CHECK_THAT(r.out, ContainsSubstring("tier=Probabilistic"));
  CHECK_THAT(r.out, ContainsSubstring("dutch-bookable=yes"));
  CHECK(run("classify --model specker").code == 0);
}

TEST_CASE("cli_signaling_file_exits_2", "[cli]") {
  TempDir dir;
  const auto r = run("classify " + dir.file("signal.json", kSignaling));
  CHECK(r.code == 2);
  CHECK_THAT(r.out, ContainsSubstring("no-signaling fails between {a,b} and {b,c} on {b} at b=0: 1/2 vs 1/4"));
}

TEST_CASE("cli_schema_error_exits_2", "[cli]") {
  TempDir dir;
  std::string text = kSignaling;
  text.replace(text.find("\"1/4\""), 5, "0.25");
  const auto r = run("classify " + dir.file("number.json", text));
  CHECK(r.code == 2);
  CHECK_THAT(r.out, ContainsSubstring("number.json:7: /tables/b,c/b=0,c=0"));
}

TEST_CASE("cli_cap_exits_3", "[cli]") {
  const auto r = run("classify ghz --cap 100");
  CHECK(r.code == 3);
  CHECK_THAT(r.out, ContainsSubstring("cap"));
}

TEST_CASE("cli_usage_and_io_exit_1", "[cli]") {
  CHECK(run("").code == 1);
  CHECK(run("frobnicate").code == 1);
  CHECK(run("classify no-such-model").code == 1);
  CHECK(run("classify bell --format xml").code == 1);
}

TEST_CASE("cli_witness_pr_box", "[cli]") {
  const auto r = run("witness pr-box --tier strong");
  CHECK(r.code == 0);
  CHECK_THAT(r.out, ContainsSubstring("collection (8 events)"));
  CHECK_THAT(r.out, ContainsSubstring("defect=1"));
  CHECK(run("witness bell --tier logical").code == 2);
}

TEST_CASE("cli_outputs_verify", "[cli]") {
  TempDir dir;
  const auto cert = dir.file("cert.json");
  REQUIRE(run("dutchbook pr-box --out " + cert).code == 0);
  CHECK_THAT(run("verify " + cert).out, ContainsSubstring("OK"));

  const auto bundle = dir.file("bundle.json");
  REQUIRE(run("export bundle bell --format structured --out " + bundle).code == 0);
  CHECK(std::filesystem::file_size(bundle) > 0);
  const auto pad = dir.file("wit.json");
  REQUIRE(run("witness hardy --padded --out " + pad).code == 0);
  CHECK(run("verify " + pad).code == 0);

  const auto report = dir.file("report.json");
  REQUIRE(run("classify ghz --out " + report).code == 0);
  CHECK(run("verify " + report).code == 0);

  // tamper with the certificate
  std::ifstream in(cert);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  text.replace(text.find("\"loss_bound\": \"1\""), 17, "\"loss_bound\": \"3\"");
  const auto bad = dir.file("bad.json", text);
  const auto r = run("verify " + bad);
  CHECK(r.code == 2);
  CHECK_THAT(r.out, ContainsSubstring("FAILED"));
  CHECK(run("verify " + dir.file("missing.json")).code == 1);
}

TEST_CASE("cli_noncontextual_dutchbook_gives_extension", "[cli]") {
  TempDir dir;
  const char* det = R"({
  "schema_version": 1,
  "kind": "empirical_model",
  "scenario": {"measurements": ["a", "b"], "outcomes": ["0", "1"], "maximal_contexts": [["a", "b"]]},
  "tables": {"a,b": {"a=0,b=1": "1/3", "a=1,b=0": "2/3"}}
}
)";
  const auto ext = dir.file("ext.json");
  const auto r = run("dutchbook " + dir.file("det.json", det) + " --out " + ext);
  CHECK(r.code == 0);
  CHECK_THAT(r.out, ContainsSubstring("no Dutch book"));
  CHECK_THAT(run("verify " + ext).out, ContainsSubstring("OK: classical extension"));
}

TEST_CASE("cli_export_is_deterministic", "[cli]") {
  const auto a = run("export nerve hardy");
  const auto b = run("export nerve hardy");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK_THAT(a.out, ContainsSubstring("graph nerve"));
  CHECK(run("export bundle pr-box --format structured").out == run("export bundle pr-box --format structured").out);
}

TEST_CASE("cli_quantum_models", "[cli]") {
  CHECK_THAT(run("classify bell-quantum").out, ContainsSubstring("tier=Probabilistic"));
  CHECK_THAT(run("classify ghz-quantum").out, ContainsSubstring("tier=Strong"));
  CHECK(run("classify bell-quantum --denom-bound 2").code == 2);
}
