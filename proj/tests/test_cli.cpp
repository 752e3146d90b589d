#include "test_main.hpp"

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "sz/schema.hpp"

using namespace sz;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& redirect = "2>/dev/null") {
  std::string cmd = std::string(SZCLI_PATH) + " " + args + " " + redirect;
  Run r;
  FILE* f = popen(cmd.c_str(), "r");
  REQUIRE(f);
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, f)) > 0) r.out.append(buf, n);
  int status = pclose(f);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch() {
  fs::path d = fs::temp_directory_path() / ("szcli_test_" + std::to_string(::getpid()));
  fs::create_directories(d);
  return d;
}

std::string write(const fs::path& p, const std::string& s) {
  std::ofstream(p) << s;
  return p.string();
}

std::string fig() { return std::string(SZ_DATA_DIR) + "/fig.json"; }

}  // namespace

TEST_CASE("documented examples") {
  Run t = run("zeta tate --p 5 --chi trivial --xi basic --format text");
  CHECK(t.code == 0);
  CHECK(t.out == "1/(1 - t)\n");
  Json tj = Json::parse(run("zeta tate --p 5 --chi trivial --xi basic").out);
  CHECK(tj["schema"] == kSchemaVersion);
  CHECK(tj["text"] == "1/(1 - t)");

  Run l = run("doubling lmonoid --n 1");
  CHECK(l.code == 0);
  Json lj = Json::parse(l.out);
  CHECK(lj["equal"] == true);
  CHECK(cone_from(lj["orbit_hull"]) == Cone::from_generators(2, {{Q(1), Q(1)}, {Q(1), Q(-1)}}));

  Run d = run("cone decompose --in " + fig() + " --deep threshold:3");
  CHECK(d.code == 0);
  CHECK(Json::parse(d.out)["cells"].size() == 4);
}

TEST_CASE("deterministic output") {
  for (const char* args : {"zeta igusa-det --n 2 --p 2", "doubling kappa --n 3 --seed 9", "padic fourier --p 3 --n 2 --seed 2",
                           "embedding faces --example mat2", "zeta lfe --n 2 --p 3 --rep spherical"}) {
    Run a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(!a.out.empty());
  }
}

TEST_CASE("outputs re-parse under the same schema") {
  fs::path dir = scratch();
  struct Case {
    const char* produce;
    const char* consume;
  };
  for (Case c : {Case{"cone decompose --in FIG --deep always", nullptr},
                 Case{"roots chamber --family C --n 2", "cone make"},
                 Case{"doubling cone --n 2", "embedding decolorize"},
                 Case{"embedding decolorize --example mat2", "embedding decolorize"},
                 Case{"padic fourier --p 5 --n 1 --seed 4", "padic fourier"},
                 Case{"doubling fplus --n 2 --seed 1", nullptr}}) {
    std::string prod = c.produce;
    if (auto pos = prod.find("FIG"); pos != std::string::npos) prod.replace(pos, 3, fig());
    Run a = run(prod);
    REQUIRE(a.code == 0);
    Json doc = Json::parse(a.out);
    CHECK(doc["schema"] == kSchemaVersion);
    if (!c.consume) continue;
    std::string file = write(dir / "doc.json", a.out);
    Run b = run(std::string(c.consume) + " --in " + file);
    CHECK(b.code == 0);
    Json back = Json::parse(b.out);
    CHECK(back["type"] == doc["type"]);
  }
  // idempotence: canonical cone documents reproduce themselves
  std::string cone = run("roots chamber --family A --n 3").out;
  CHECK(run("cone make --in " + write(dir / "c.json", cone)).out == cone);
  std::string emb = run("doubling cone --n 3").out;
  Json ej = Json::parse(emb);
  CHECK(embedding_json(embedding_from(ej), eigen_lattice_from(ej)).dump(2) + "\n" == emb);
  std::string z = run("zeta gj-gl2 --p 2").out;
  CHECK(zeta_json(zeta_from(Json::parse(z))).dump(2) + "\n" == z);
  fs::remove_all(dir);
}

TEST_CASE("formats") {
  Run csv = run("zeta igusa-det --n 1 --p 2 --format csv --depth 3");
  CHECK(csv.code == 0);
  CHECK(csv.out == "k,measure\n0,1/2\n1,1/4\n2,1/8\nk>=3,1/8\n");
  CHECK(run("zeta tate --p 3 --format csv").out == "k,measure\nk>=0,1\n");
  CHECK(run("roots orbit --family C --n 1 --v 0,1 --format csv").out == "0,-1\n0,1\n");
  CHECK(run("cone make --in " + fig() + " --format csv").code == 2);
  Run text = run("embedding classify --example mat2 --format text");
  CHECK(text.out.find("affine: true") != std::string::npos);
  fs::path dir = scratch();
  CHECK(run("doubling curve --n 2 --out " + (dir / "o.json").string()).out.empty());
  CHECK(Json::parse(std::ifstream(dir / "o.json"))["order"] == 1);
  fs::remove_all(dir);
}

TEST_CASE("schema errors exit with 2") {
  fs::path dir = scratch();
  CHECK(run("zeta tate --p 5 --bogus 1").code == 2);
  CHECK(run("zeta").code == 2);
  CHECK(run("frobnicate").code == 2);
  CHECK(run("zeta tate --p 6").code == 2);
  CHECK(run("zeta tate --p 5 --chi cubic").code == 2);
  CHECK(run("cone make").code == 2);
  CHECK(run("cone make --in " + (dir / "missing.json").string()).code == 2);
  CHECK(run("cone make --in " + write(dir / "a.json", "{not json")).code == 2);
  CHECK(run("cone make --in " + fig()).code == 2);  // a polyhedron, not a cone
  CHECK(run("cone make --in " + write(dir / "b.json", R"({"schema":"spherical-zeta/v1","type":"cone","dim":2,"rays":[["1"]]})")).code == 2);
  CHECK(run("cone make --in " + write(dir / "c.json", R"({"type":"cone","dim":1,"rays":[["1"]]})")).code == 2);
  CHECK(run("zeta lfe --n 1 --p 3 --rep spherical").code == 2);
  Run e = run("zeta tate --p 6", "2>&1 >/dev/null");
  CHECK(e.out.find("prime") != std::string::npos);
  fs::remove_all(dir);
}

TEST_CASE("assertion failures exit with 3 and a witness") {
  fs::path dir = scratch();
  // C leaves V: relint(C) misses V
  Json emb = embedding_json(mat2_example());
  emb["C"] = cone_json(Cone::from_generators(2, {{Q(1), Q(0)}}));
  emb["F"] = Json::array();
  std::string f = write(dir / "bad.json", emb.dump());
  Run v = run("embedding validate --in " + f, "2>&1");
  CHECK(v.code == 3);
  CHECK(v.out.find("witness") != std::string::npos);
  CHECK(run("embedding classify --in " + f).code == 3);

  Json lag = lagrangian_json(SymplecticSpace::standard(2), Lagrangian{{{Q(1), Q(0), Q(0), Q(0)}, {Q(0), Q(1), Q(0), Q(0)}}});
  Run k = run("doubling kappa --in " + write(dir / "l.json", lag.dump()), "2>&1");
  CHECK(k.code == 3);
  CHECK(k.out.find("assertion failed") != std::string::npos);

  Json sb = schwartz_bruhat_json(SchwartzBruhat::ball(3, {Q(1), Q(0), Q(0), Q(0)}, 1));
  CHECK(run("zeta gj-gl2 --p 3 --in " + write(dir / "x.json", sb.dump())).code == 3);
  fs::remove_all(dir);
}
