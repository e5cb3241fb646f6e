#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

struct Run {
    int code = -1;
    std::string out;
};

std::string bin()
{
    const char* b = std::getenv("PDMLAB_BIN");
    REQUIRE_MESSAGE(b, "PDMLAB_BIN is not set");
    return b;
}

Run run(const std::string& args)
{
    Run r;
    std::string cmd = bin() + " " + args + " 2>&1";
    FILE* p = popen(cmd.c_str(), "r");
    REQUIRE(p);
    char buf[4096];
    std::size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0)
        r.out.append(buf, n);
    int st = pclose(p);
    r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
    return r;
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string tmp(const std::string& name) { return "cli_test_" + name; }

}  // namespace

TEST_CASE("catalog verify and list")
{
    auto r = run("catalog verify --entry 17");
    CHECK(r.code == 0);
    CHECK(r.out.find("failed 0") != std::string::npos);
    auto l = run("catalog list");
    CHECK(l.code == 0);
    int rows = 0;
    std::istringstream in(l.out);
    for (std::string line; std::getline(in, line);)
        if (line.find("  f = ") != std::string::npos)
            ++rows;
    CHECK(rows == 18);
}

TEST_CASE("bad arguments exit with 2")
{
    CHECK(run("catalog verify --entry 19").code == 2);
    CHECK(run("catalog verify").code == 2);
    CHECK(run("catalog frobnicate").code == 2);
    CHECK(run("").code == 2);
    CHECK(run("nosuch").code == 2);
    CHECK(run("spectrum --grid 3").code == 2);
    CHECK(run("spectrum --system so4 --l -1").code == 2);
    CHECK(run("algebra --check so5").code == 2);
    CHECK(run("expr \"(+ x1\"").code == 2);
    CHECK(run("transform --kind twist --entry 3").code == 2);
    CHECK(run("--help").code == 0);
}

TEST_CASE("json report validates structurally and is reproducible")
{
    std::string a = tmp("a.json"), b = tmp("b.json");
    CHECK(run("--json " + a + " catalog verify --entry 5").code == 0);
    CHECK(run("--json " + b + " catalog verify --entry 5").code == 0);
    std::string ja = slurp(a), jb = slurp(b);
    CHECK_FALSE(ja.empty());
    CHECK(ja == jb);
    auto j = nlohmann::json::parse(ja);
    CHECK(j["tool"] == "pdmlab");
    CHECK(j["seed"].is_number_unsigned());
    CHECK(j["sections"].size() == 1);
    for (const auto& c : j["sections"][0]["checks"]) {
        for (const char* k : {"entry", "integral", "check", "tier", "status", "max_residual", "points"})
            CHECK(c.contains(k));
    }
    CHECK(j["summary"]["failed"] == 0);
    std::remove(a.c_str());
    std::remove(b.c_str());
}

TEST_CASE("seed and policy flags are echoed")
{
    std::string a = tmp("seed.json");
    CHECK(run("--seed 12345 --points 64 --tol 1e-10 --json " + a + " catalog verify --entry 3").code == 0);
    auto j = nlohmann::json::parse(slurp(a));
    CHECK(j["seed"] == 12345);
    CHECK(j["policy"]["points"] == 64);
    CHECK(j["policy"]["tol"] == doctest::Approx(1e-10));
    bool saw64 = false;
    for (const auto& c : j["sections"][0]["checks"])
        if (c["tier"] == "numeric")
            saw64 = saw64 || c["points"] == 64;
    CHECK(saw64);
    std::remove(a.c_str());
    auto t = run("--seed 777 catalog verify --entry 3");
    CHECK(t.out.find("seed 777") != std::string::npos);
}

TEST_CASE("all rows fan out in order")
{
    std::string a = tmp("all.json");
    CHECK(run("--jobs 2 --json " + a + " catalog verify --all").code == 0);
    auto j = nlohmann::json::parse(slurp(a));
    REQUIRE(j["sections"].size() == 18);
    for (int i = 0; i < 18; ++i)
        CHECK(j["sections"][i]["title"].get<std::string>().find("line " + std::to_string(i + 1)) != std::string::npos);
    std::remove(a.c_str());
}

TEST_CASE("algebra")
{
    CHECK(run("algebra --check so4").code == 0);
    CHECK(run("algebra --check so13").code == 0);
    CHECK(run("algebra --subalgebras").code == 0);
    CHECK(run("algebra --determining").code == 0);
    auto c3 = run("algebra --check c3");
    CHECK(c3.code == 1);
    CHECK(c3.out.find("Jacobi") != std::string::npos);
}

TEST_CASE("spectrum")
{
    auto r = run("spectrum --system so4 --l 2 --count 1");
    CHECK(r.code == 0);
    CHECK(r.out.find("system,l_or_kappa,index,lambda_fd,lambda_exact,rel_err") != std::string::npos);
    CHECK(r.out.find("3,41,(+ (* 41 mu) nu)") != std::string::npos);
    auto s = run("spectrum --system scale --kappa 0 --etilde 1 --omega 2");
    CHECK(s.code == 0);
    CHECK(s.out.find("residual=") != std::string::npos);
    auto a = run("spectrum --system so4 --l 0 --count 3 --outer asymptotic");
    CHECK(a.code == 0);
    // Dirichlet ends at r_max = 30 leave a 4% shift at l = 0
    CHECK(run("spectrum --system so4 --l 0 --count 3").code == 1);
    CHECK(run("spectrum --system so13 --l 0 --rmax 0.9 --grid 400").code == 0);
}

TEST_CASE("casimir")
{
    auto r = run("casimir --system so4");
    CHECK(r.code == 0);
    CHECK(r.out.find("n,Etilde,E_mu_coeff,E_const") != std::string::npos);
    auto s = run("casimir --system so13");
    CHECK(s.code == 1);
    CHECK(s.out.find("opposite-sign identity proved") != std::string::npos);
}

TEST_CASE("transform")
{
    auto inv = run("transform --kind inversion --entry 18");
    CHECK(inv.code == 0);
    CHECK(inv.out.find("f' = mu\n") != std::string::npos);
    CHECK(inv.out.find("V' = nu\n") != std::string::npos);
    CHECK(inv.out.find("weight = -3") != std::string::npos);
    auto sh = run("transform --kind shift --nu 0,0,1 --entry 10");
    CHECK(sh.code == 0);
    CHECK(sh.out.find("f' = (F (+ x3 1))") != std::string::npos);
    auto bad = run("transform --kind inversion --entry 18 --weight 1");
    CHECK(bad.code == 1);
    CHECK(bad.out.find("obstruction:") != std::string::npos);
    auto rot = run("transform --kind rotation --cayley 1,1/2,2 --entry 14");
    CHECK(rot.code == 0);
    auto dil = run("transform --kind dilatation --k 3 --f \"(* mu $r2)\" --V nu");
    CHECK(dil.code == 0);
    CHECK(dil.out.find("V' = nu") != std::string::npos);
}

TEST_CASE("expr round trip")
{
    auto r = run("expr \"(* (^ x1 2) (sin x2))\" --diff 1");
    CHECK(r.code == 0);
    CHECK(r.out.find("parsed:     (* (^ x1 2) (sin x2))") != std::string::npos);
    CHECK(r.out.find("d/dx1:") != std::string::npos);
}
