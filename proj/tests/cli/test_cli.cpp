#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

class Workspace {
 public:
  Workspace() : dir_(fs::temp_directory_path() / ("hhelm_cli_" + std::to_string(::getpid()))) {
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  ~Workspace() { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  Run run(const std::string& args) const {
    const std::string out = path("stdout.txt"), err = path("stderr.txt");
    const std::string cmd = std::string(HHELM_CLI_PATH) + " " + args + " >" + out + " 2>" + err;
    const int status = std::system(cmd.c_str());
    Run r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
  }

 private:
  fs::path dir_;
};

std::vector<std::string> data_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);)
    if (!line.empty() && line[0] != '#') out.push_back(line);
  return out;
}

std::vector<double> parse_row(const std::string& line) {
  std::vector<double> out;
  std::istringstream in(line);
  for (std::string f; std::getline(in, f, ',');) out.push_back(std::stod(f));
  return out;
}

std::size_t field_count(const std::string& line) {
  return static_cast<std::size_t>(std::count(line.begin(), line.end(), ',')) + 1;
}

// Feature CSV with two well-separated Gaussian clusters.
void write_separable_features(const std::string& path, std::size_t n, std::size_t d) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  std::ofstream os(path);
  os << "trial_id,label";
  for (std::size_t j = 0; j < d; ++j) os << ",f" << j;
  os << "\n";
  for (std::size_t i = 0; i < n; ++i) {
    const bool pos = i % 2 == 1;
    os << "s" << i << "," << (pos ? "positivity" : "negativity");
    for (std::size_t j = 0; j < d; ++j) os << "," << (pos ? 3.0 : -3.0) + g(rng);
    os << "\n";
  }
}

// Trials CSV holding one linear ramp trial at 64 Hz.
void write_ramp_trial(const std::string& path) {
  std::ofstream os(path);
  os << "trial_id,session,label,fs";
  for (int i = 0; i < 512; ++i) os << ",s" << i;
  os << "\nramp,1,negativity,64";
  for (int i = 0; i < 512; ++i) os << "," << 0.05 * i - 10.0;
  os << "\n";
}

}  // namespace

TEST_CASE("synth") {
  Workspace ws;
  SUBCASE("writes one row per trial") {
    const Run r = ws.run("synth --n-per-class 100 --seed 1 --out " + ws.path("t.csv"));
    REQUIRE(r.code == 0);
    const auto lines = data_lines(slurp(ws.path("t.csv")));
    CHECK(lines.size() == 201);
    CHECK(lines[0].rfind("trial_id,session,label,fs,s0,", 0) == 0);
    CHECK(field_count(lines[1]) == 4 + 2048);
    CHECK(r.err.find("wrote 200 trials") != std::string::npos);
  }
  SUBCASE("missing --out is a usage error") {
    const Run r = ws.run("synth --n-per-class 5");
    CHECK(r.code == 1);
    CHECK(r.err.find("--out") != std::string::npos);
  }
  SUBCASE("same flags give identical bytes") {
    REQUIRE(ws.run("synth --n-per-class 20 --seed 3 --out " + ws.path("a.csv")).code == 0);
    REQUIRE(ws.run("synth --n-per-class 20 --seed 3 --out " + ws.path("b.csv")).code == 0);
    REQUIRE(ws.run("synth --n-per-class 20 --seed 4 --out " + ws.path("c.csv")).code == 0);
    CHECK(slurp(ws.path("a.csv")) == slurp(ws.path("b.csv")));
    CHECK(slurp(ws.path("a.csv")) != slurp(ws.path("c.csv")));
  }
  SUBCASE("echoes its configuration") {
    REQUIRE(ws.run("--quiet synth --n-per-class 2 --noise 3 --out " + ws.path("t.csv")).code == 0);
    const std::string text = slurp(ws.path("t.csv"));
    CHECK(text.find("# noise_sigma=3\n") != std::string::npos);
    CHECK(text.find("# seed=1\n") != std::string::npos);
  }
  SUBCASE("quiet") {
    const Run r = ws.run("synth --n-per-class 2 --quiet --out " + ws.path("t.csv"));
    CHECK(r.code == 0);
    CHECK(r.err.empty());
  }
  SUBCASE("bad values") {
    CHECK(ws.run("synth --n-per-class 0 --out " + ws.path("t.csv")).code == 1);
    CHECK(ws.run("synth --n-per-class many --out " + ws.path("t.csv")).code == 1);
    CHECK(ws.run("frobnicate").code == 1);
  }
}

TEST_CASE("decompose") {
  Workspace ws;
  SUBCASE("monotone trial gives a residual-only file") {
    write_ramp_trial(ws.path("ramp.csv"));
    const Run r = ws.run("decompose --input " + ws.path("ramp.csv") + " --out " + ws.path("imfs"));
    REQUIRE(r.code == 0);
    const auto lines = data_lines(slurp(ws.path("imfs/ramp_imfs.csv")));
    REQUIRE(lines.size() == 513);
    CHECK(lines[0] == "residual");
  }
  SUBCASE("columns reconstruct the filtered trial") {
    REQUIRE(ws.run("synth --n-per-class 1 --out " + ws.path("t.csv")).code == 0);
    const Run r =
        ws.run("decompose --input " + ws.path("t.csv") + " --trial trial_00002 --out " + ws.path("imfs"));
    REQUIRE(r.code == 0);
    CHECK(r.err.find("filter cutoff: 10 Hz") != std::string::npos);
    CHECK(!fs::exists(ws.path("imfs/trial_00001_imfs.csv")));

    // Filter the trial again without EMD: a single-IMF cap leaves the rest in the residual.
    REQUIRE(ws.run("decompose --input " + ws.path("t.csv") + " --trial trial_00002 --max-imfs 1 --out " +
                   ws.path("one"))
                .code == 0);
    const auto full = data_lines(slurp(ws.path("imfs/trial_00002_imfs.csv")));
    const auto capped = data_lines(slurp(ws.path("one/trial_00002_imfs.csv")));
    REQUIRE(full.size() == 2049);
    REQUIRE(capped.size() == 2049);
    CHECK(full[0].rfind("imf_1,imf_2,", 0) == 0);
    CHECK(full[0].substr(full[0].size() - 9) == ",residual");
    double worst = 0.0, scale = 0.0;
    for (std::size_t i = 1; i < full.size(); ++i) {
      double a = 0.0, b = 0.0;
      for (double v : parse_row(full[i])) a += v;
      for (double v : parse_row(capped[i])) b += v;
      worst = std::max(worst, std::fabs(a - b));
      scale = std::max(scale, std::fabs(b));
    }
    CHECK(worst <= 1e-8 * scale);
    CHECK(slurp(ws.path("imfs/trial_00002_imfs.csv")).find("# trial_id=trial_00002\n") != std::string::npos);
  }
  SUBCASE("unknown trial is a data error") {
    REQUIRE(ws.run("synth --n-per-class 1 --out " + ws.path("t.csv")).code == 0);
    const Run r = ws.run("decompose --input " + ws.path("t.csv") + " --trial nope --out " + ws.path("imfs"));
    CHECK(r.code == 2);
    CHECK(r.err.find("nope") != std::string::npos);
  }
  SUBCASE("missing input file is a data error") {
    CHECK(ws.run("decompose --input " + ws.path("missing.csv") + " --out " + ws.path("imfs")).code == 2);
  }
}

TEST_CASE("features") {
  Workspace ws;
  REQUIRE(ws.run("synth --n-per-class 10 --out " + ws.path("t.csv")).code == 0);
  const Run r = ws.run("features --input " + ws.path("t.csv") + " --out " + ws.path("f1.csv"));
  REQUIRE(r.code == 0);
  const std::string text = slurp(ws.path("f1.csv"));
  const auto lines = data_lines(text);
  REQUIRE(lines.size() == 21);
  for (const auto& l : lines) CHECK(field_count(l) == 2 + 6 * 2 * 11);
  CHECK(text.find("# filter_cutoff_hz=10\n") != std::string::npos);

  REQUIRE(ws.run("features --input " + ws.path("t.csv") + " --out " + ws.path("f2.csv")).code == 0);
  CHECK(slurp(ws.path("f2.csv")) == text);

  REQUIRE(ws.run("features --input " + ws.path("t.csv") + " --max-imfs 4 --sources raw --out " + ws.path("f3.csv"))
              .code == 0);
  CHECK(field_count(data_lines(slurp(ws.path("f3.csv")))[0]) == 2 + 4 * 11);
  CHECK(ws.run("features --input " + ws.path("t.csv") + " --taps 32 --out " + ws.path("f4.csv")).code == 1);
}

TEST_CASE("evaluate") {
  Workspace ws;
  write_separable_features(ws.path("f.csv"), 60, 5);
  SUBCASE("table configuration is accepted") {
    const Run r = ws.run("evaluate --input " + ws.path("f.csv") + " --layers 370,430,260 --kernel hessenberg --out " +
                         ws.path("r.json"));
    CHECK(r.code == 0);
    CHECK(slurp(ws.path("r.json")).find("\"hessenberg\"") != std::string::npos);
  }
  SUBCASE("k below 2 is a usage error") {
    CHECK(ws.run("evaluate --input " + ws.path("f.csv") + " --k 1 --out " + ws.path("r.json")).code == 1);
  }
  SUBCASE("separable features score high") {
    const Run r = ws.run("evaluate --input " + ws.path("f.csv") + " --out " + ws.path("r.json"));
    REQUIRE(r.code == 0);
    const std::string report = slurp(ws.path("r.json"));
    const auto at = report.find("\"accuracy\"");
    REQUIRE(at != std::string::npos);
    const auto mean_at = report.find("\"mean\":", at);
    REQUIRE(mean_at != std::string::npos);
    CHECK(std::stod(report.substr(mean_at + 7)) >= 95.0);
    CHECK(r.err.find("accuracy: mean") != std::string::npos);
  }
  SUBCASE("reports are byte-identical across runs") {
    REQUIRE(ws.run("evaluate --input " + ws.path("f.csv") + " --seed 9 --out " + ws.path("a.json")).code == 0);
    REQUIRE(ws.run("evaluate --input " + ws.path("f.csv") + " --seed 9 --out " + ws.path("b.json")).code == 0);
    CHECK(slurp(ws.path("a.json")) == slurp(ws.path("b.json")));
  }
  SUBCASE("model export") {
    REQUIRE(ws.run("evaluate --input " + ws.path("f.csv") + " --save-model " + ws.path("m.json") + " --out " +
                   ws.path("r.json"))
                .code == 0);
    CHECK(slurp(ws.path("m.json")).find("\"readout\"") != std::string::npos);
  }
  SUBCASE("bad flags") {
    CHECK(ws.run("evaluate --input " + ws.path("f.csv") + " --kernel qr --out " + ws.path("r.json")).code == 1);
    CHECK(ws.run("evaluate --input " + ws.path("f.csv") + " --kernel lu --ridge 0 --out " + ws.path("r.json")).code ==
          1);
    CHECK(ws.run("evaluate --input " + ws.path("f.csv") + " --layers 1,2,3,4,5,6,7,8,9 --out " + ws.path("r.json"))
              .code == 1);
    CHECK(ws.run("evaluate --input " + ws.path("f.csv") + " --k 40 --out " + ws.path("r.json")).code == 2);
  }
}

TEST_CASE("sweep") {
  Workspace ws;
  write_separable_features(ws.path("f.csv"), 40, 4);
  SUBCASE("budget 20") {
    const Run r = ws.run("sweep --input " + ws.path("f.csv") +
                         " --min 100 --max 500 --step 10 --depth 2 --budget 20 --out " + ws.path("s.csv"));
    REQUIRE(r.code == 0);
    const auto lines = data_lines(slurp(ws.path("s.csv")));
    REQUIRE(lines.size() == 21);
    CHECK(lines[0] == "rank,layers,mean_accuracy,std_accuracy,mean_selectivity,mean_sensitivity");
    double prev = 101.0;
    for (std::size_t i = 1; i < lines.size(); ++i) {
      std::istringstream in(lines[i]);
      std::string rank, layers, acc;
      std::getline(in, rank, ',');
      std::getline(in, layers, ',');
      std::getline(in, acc, ',');
      CHECK(std::stoul(rank) == i);
      std::istringstream ls(layers);
      for (std::string u; std::getline(ls, u, '-');) {
        const unsigned long v = std::stoul(u);
        CHECK(v >= 100);
        CHECK(v <= 500);
        CHECK(v % 10 == 0);
      }
      CHECK(std::stod(acc) <= prev);
      prev = std::stod(acc);
    }
    CHECK(r.out.find("best layers ") == 0);
  }
  SUBCASE("budget 1") {
    REQUIRE(ws.run("sweep --input " + ws.path("f.csv") + " --min 100 --max 200 --budget 1 --out " + ws.path("s.csv"))
                .code == 0);
    CHECK(data_lines(slurp(ws.path("s.csv"))).size() == 2);
  }
}

TEST_CASE("solver-bench") {
  Workspace ws;
  const Run r = ws.run("solver-bench --sizes 50,100,200 --out " + ws.path("b.csv"));
  REQUIRE(r.code == 0);
  const auto lines = data_lines(slurp(ws.path("b.csv")));
  REQUIRE(lines.size() == 10);
  CHECK(lines[0] == "size,kernel,seconds,deviation_from_svd");
  int svd = 0, hess = 0, lu = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::istringstream in(lines[i]);
    std::string size, kernel, seconds, deviation;
    std::getline(in, size, ',');
    std::getline(in, kernel, ',');
    std::getline(in, seconds, ',');
    std::getline(in, deviation, ',');
    svd += kernel == "svd";
    hess += kernel == "hessenberg";
    lu += kernel == "lu";
    if (size == "100") CHECK(std::stod(deviation) <= 1e-8);
  }
  CHECK(svd == 3);
  CHECK(hess == 3);
  CHECK(lu == 3);
  CHECK(ws.run("solver-bench --sizes 0 --out " + ws.path("b.csv")).code == 1);
}
