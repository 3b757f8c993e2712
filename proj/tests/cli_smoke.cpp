// End-to-end exercise of the installed CLI binary: writes a config, runs
// two subcommands through the shell, and checks the emitted files.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

int fail(const std::string& what) {
  std::fprintf(stderr, "cli_smoke: %s\n", what.c_str());
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) return fail("usage: cli_smoke <path-to-opucctl>");
  const std::string tool = argv[1];
  fs::path tmp = fs::temp_directory_path() / "opuc_cli_smoke";
  fs::remove_all(tmp);
  fs::create_directories(tmp);

  fs::path cfg = tmp / "bands.toml";
  {
    std::ofstream out(cfg);
    out << "kind = \"bands\"\n"
        << "[schedule]\n"
        << "type = \"periodic\"\n"
        << "alphas = [[0.3, 0.0], [0.0, 0.6]]\n";
  }

  std::string cmd = "\"" + tool + "\" bands --config \"" + cfg.string() +
                    "\" --out \"" + (tmp / "out").string() + "\" > \"" +
                    (tmp / "log.txt").string() + "\" 2>&1";
  if (std::system(cmd.c_str()) != 0) return fail("bands subcommand failed");

  bool found_manifest = false, found_bands = false;
  for (const auto& entry : fs::recursive_directory_iterator(tmp / "out")) {
    if (entry.path().filename() == "manifest.json") found_manifest = true;
    if (entry.path().filename() == "bands.csv") found_bands = true;
  }
  if (!found_manifest) return fail("manifest.json missing");
  if (!found_bands) return fail("bands.csv missing");

  // Mismatched subcommand vs config kind is rejected.
  std::string bad = "\"" + tool + "\" zeros --config \"" + cfg.string() +
                    "\" > /dev/null 2>&1";
  if (std::system(bad.c_str()) == 0)
    return fail("kind mismatch should be rejected");

  // Single acceptance criterion through the CLI (fast one).
  std::string accept = "\"" + tool + "\" accept --id C13 --json > \"" +
                       (tmp / "accept.json").string() + "\" 2>&1";
  if (std::system(accept.c_str()) != 0) return fail("accept --id C13 failed");
  std::ifstream in(tmp / "accept.json");
  std::stringstream ss;
  ss << in.rdbuf();
  if (ss.str().find("\"all_passed\": true") == std::string::npos)
    return fail("accept JSON did not report all_passed");

  fs::remove_all(tmp);
  std::printf("cli_smoke: OK\n");
  return 0;
}
