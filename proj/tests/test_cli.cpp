#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

using std::string;

static const string kBin = HC_CLI_PATH;
static const string kData = HC_DATA_DIR;

struct RunResult {
  int code = -1;
  string out;  // stdout + stderr
};

static RunResult run(const string& args) {
  RunResult r;
  string cmd = kBin + " " + args + " 2>&1";
  FILE* f = popen(cmd.c_str(), "r");
  REQUIRE(f != nullptr);
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), f)) > 0) r.out.append(buf.data(), n);
  int st = pclose(f);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

TEST_CASE("frobpoly prints the characteristic polynomial") {
  RunResult r = run("frobpoly --curve " + kData + "/x3x1.txt --p 5");
  CHECK(r.code == 0);
  CHECK(r.out == "X^2 + 3X + 5\n");
  RunResult r7 = run("frobpoly --curve " + kData + "/37a.txt --p 7");
  CHECK(r7.code == 0);
  CHECK(r7.out.rfind("X^2", 0) == 0);
}

TEST_CASE("canonical of O is exactly zero") {
  RunResult r = run("canonical --curve " + kData + "/37a.txt --point O");
  CHECK(r.code == 0);
  // The stanza file's own point plus the explicit O.
  CHECK(r.out.find("hhat = 0 (exact; torsion)") != string::npos);
}

TEST_CASE("canonical matches the frozen generator height") {
  RunResult r = run("canonical --curve " + kData + "/37a.txt --tol 1e-6");
  CHECK(r.code == 0);
  CHECK(r.out.find("0.0766671") != string::npos);
}

TEST_CASE("weil on a stanza point") {
  RunResult r = run("weil --curve " + kData + "/m2.txt");
  CHECK(r.code == 0);
  // h(psi (3,5)) = log 5 (archimedean max is |y| = 5).
  CHECK(r.out.find("1.60943791") != string::npos);
}

TEST_CASE("good-prime on the CM corpus curve") {
  RunResult r = run("good-prime --curve " + kData + "/m2.txt");
  CHECK(r.code == 0);
  CHECK(r.out.find("p = 7") != string::npos);
  CHECK(r.out.find("CM + ordinary") != string::npos);
}

TEST_CASE("delta of congruent twist points") {
  RunResult r = run("delta --curve " + kData +
                    "/twist5.txt --point2 \"x=1 y=1 - 2*w\" --p 5");
  CHECK(r.code == 0);
  CHECK(r.out.find("log 5") != string::npos);
}

TEST_CASE("adcheck oracle") {
  RunResult r = run("adcheck --field \"Q(sqrt 5)\" --alpha \"-1 + 2*w\" --p 5");
  CHECK(r.code == 0);
  CHECK(r.out.find("= 5, required >= 2: holds") != string::npos);
}

TEST_CASE("exit codes per error class") {
  // Parse error (off-curve point) -> 2.
  RunResult bad = run("canonical --curve " + kData + "/37a.txt --point \"x=1 y=1\"");
  CHECK(bad.code == 2);
  CHECK(bad.out.find("residual") != string::npos);
  // Hypothesis error (bad prime) -> 3.
  RunResult hyp = run("frobpoly --curve " + kData + "/37a.txt --p 37");
  CHECK(hyp.code == 3);
  // Precision cap (unreachable tolerance within the doubling budget) -> 4.
  RunResult cap = run("canonical --curve " + kData +
                      "/37a.txt --tol 1e-12 --max-doublings 3");
  CHECK(cap.code == 4);
  // CLI usage error -> 2.
  RunResult usage = run("frobpoly --curve " + kData + "/37a.txt");
  CHECK(usage.code == 2);
}

TEST_CASE("certify then verify round-trips") {
  string cert = "cli_cert_tmp.json";
  RunResult c = run("certify --curve " + kData + "/m2.txt --out " + cert);
  CHECK(c.code == 0);
  CHECK(c.out.find("verdict: certified") != string::npos);
  RunResult v = run("verify " + cert);
  CHECK(v.code == 0);
  CHECK(v.out.find("verified") != string::npos);
  CHECK(v.out.find("certified") != string::npos);
  std::remove(cert.c_str());
}

TEST_CASE("certify a torsion point") {
  RunResult c = run("certify --curve " + kData + "/cm3.txt");
  CHECK(c.code == 0);
  CHECK(c.out.find("verdict: torsion") != string::npos);
}

TEST_CASE("deterministic reports") {
  RunResult a = run("canonical --curve " + kData + "/x3x1.txt --tol 1e-5");
  RunResult b = run("canonical --curve " + kData + "/x3x1.txt --tol 1e-5");
  CHECK(a.out == b.out);
  CHECK(!a.out.empty());
}
