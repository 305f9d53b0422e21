#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "cpilink/csv.hpp"
#include "cpilink/errors.hpp"
#include "cpilink/persistence.hpp"
#include "cpilink/simulate.hpp"

using namespace cpilink;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    TempDir() {
        static std::uint64_t counter = 0;
        path = fs::temp_directory_path() /
               ("cpilink_test_" +
                std::to_string(sim::splitmix64(reinterpret_cast<std::uintptr_t>(this) + ++counter)));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

fs::path write_file(const fs::path& dir, const std::string& name, const std::string& content) {
    fs::path p = dir / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
}

}  // namespace

TEST_CASE("load_series parses simple files") {
    TempDir tmp;
    auto p = write_file(tmp.path, "s.csv", "2003-07,100.0\n2003-08,100.5\n");
    MonthlySeries s = load_series(p, "S");
    CHECK(s.start() == MonthlyIndex{2003, 7});
    CHECK(s.values() == std::vector<double>{100.0, 100.5});

    SUBCASE("optional header and CRLF endings") {
        auto q = write_file(tmp.path, "h.csv", "month,value\r\n2003-07,1.5\r\n2003-08,2.5\r\n");
        MonthlySeries t = load_series(q, "T");
        CHECK(t.size() == 2);
        CHECK(t.values()[1] == 2.5);
    }
}

TEST_CASE("load_series reports gaps, ordering and parse failures") {
    TempDir tmp;

    auto gap = write_file(tmp.path, "gap.csv", "2003-07,1.0\n2003-09,2.0\n");
    try {
        load_series(gap, "S");
        FAIL("expected GapError");
    } catch (const GapError& e) {
        CHECK(e.first_missing == MonthlyIndex{2003, 8});
        CHECK(std::string(e.what()).find("2003-08") != std::string::npos);
    }

    auto dup = write_file(tmp.path, "dup.csv", "2003-07,1.0\n2003-07,2.0\n");
    CHECK_THROWS_AS(load_series(dup, "S"), OrderError);
    auto back = write_file(tmp.path, "back.csv", "2003-07,1.0\n2003-06,2.0\n");
    CHECK_THROWS_AS(load_series(back, "S"), OrderError);

    auto empty = write_file(tmp.path, "empty.csv", "");
    CHECK_THROWS_AS(load_series(empty, "S"), ParseError);
    auto header_only = write_file(tmp.path, "ho.csv", "month,value\n");
    CHECK_THROWS_AS(load_series(header_only, "S"), ParseError);
    auto bad = write_file(tmp.path, "bad.csv", "2003-07,1.0\n2003-08,abc\n");
    CHECK_THROWS_AS(load_series(bad, "S"), ParseError);
    CHECK_THROWS_AS(load_series(tmp.path / "missing.csv", "S"), IoError);
}

TEST_CASE("price series must be positive") {
    TempDir tmp;
    auto p = write_file(tmp.path, "p.csv", "2003-07,10.0\n2003-08,-1.0\n");
    CHECK_THROWS_AS(load_price_series(p, "T"), ParseError);
}

TEST_CASE("catalog load uses the built-in registry") {
    TempDir tmp;
    write_file(tmp.path, "sefv.csv", "2003-01,100\n2003-02,101\n");
    write_file(tmp.path, "pdrug.csv", "2003-01,200\n2003-02,201\n");
    auto manifest = write_file(tmp.path, "manifest.csv", "SEFV,sefv.csv\nPDRUG,pdrug.csv\n");

    CpiCatalog catalog = load_catalog(manifest);
    CHECK(catalog.size() == 2);
    CHECK(catalog.at("SEFV").description == "food away from home");
    CHECK(catalog.at("PDRUG").description == "prescription drugs");
    CHECK_FALSE(catalog.at("SEFV").user_defined);

    SUBCASE("unknown acronyms load but are flagged") {
        write_file(tmp.path, "xyzq.csv", "2003-01,7\n2003-02,8\n");
        auto m2 = write_file(tmp.path, "m2.csv", "XYZQ,xyzq.csv\n");
        CpiCatalog c2 = load_catalog(m2);
        CHECK(c2.at("XYZQ").user_defined);
    }

    SUBCASE("duplicate acronyms are rejected") {
        auto m3 = write_file(tmp.path, "m3.csv", "SEFV,sefv.csv\nSEFV,pdrug.csv\n");
        CHECK_THROWS_AS(load_catalog(m3), DuplicateAcronym);
    }
}

TEST_CASE("registry covers the seventy components") {
    CHECK(registry_entries().size() == 70);
    CHECK(registry_description("C").value() == "CPI");
    CHECK(registry_description("WAP").value() == "women's and girl's apparel");
    CHECK_FALSE(registry_description("ZZZ").has_value());
}

TEST_CASE("model persistence round-trips exactly") {
    TempDir tmp;
    sim::Rng rng(2024);

    for (int i = 0; i < 5; ++i) {
        FittedModel m;
        m.spec = ModelSpec{"TICK", "SEFV", 3, "PDRUG", -2};
        m.b1 = rng.next_normal() * 7.3;
        m.b2 = rng.next_normal() / 3.0;
        m.c = rng.next_normal() * 40.0;
        m.d = rng.next_normal() * 1000.0;
        m.window = Window{{2003, 7}, {2004, 6}};
        for (int r = 0; r < m.window.count(); ++r) m.residuals.push_back(rng.next_normal());
        m.sigma = recompute_sigma(m.residuals);

        fs::path p = tmp.path / ("m" + std::to_string(i) + ".json");
        save_model(m, p);
        FittedModel back = load_model(p);
        CHECK(back == m);
    }
}

TEST_CASE("model persistence rejects bad documents") {
    TempDir tmp;
    FittedModel m;
    m.spec = ModelSpec{"T", "A", 0, "B", 0};
    m.window = Window{{2003, 1}, {2003, 12}};
    m.residuals.assign(12, 0.5);
    m.sigma = recompute_sigma(m.residuals);
    fs::path good = tmp.path / "good.json";
    save_model(m, good);

    SUBCASE("version mismatch") {
        std::ifstream in(good);
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        auto pos = text.find("\"schema_version\": 1");
        REQUIRE(pos != std::string::npos);
        text.replace(pos, 19, "\"schema_version\": 99");
        auto bad = tmp.path / "v99.json";
        std::ofstream(bad) << text;
        CHECK_THROWS_AS(load_model(bad), SchemaError);
    }

    SUBCASE("truncated file") {
        std::ifstream in(good);
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        auto bad = tmp.path / "trunc.json";
        std::ofstream(bad) << text.substr(0, text.size() / 2);
        CHECK_THROWS_AS(load_model(bad), SchemaError);
    }

    SUBCASE("missing field") {
        auto bad = tmp.path / "missing.json";
        std::ofstream(bad) << "{\"schema_version\": 1, \"ticker\": \"T\"}";
        CHECK_THROWS_AS(load_model(bad), SchemaError);
    }

    SUBCASE("ill-typed window") {
        std::ifstream in(good);
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        auto pos = text.find("\"window\"");
        REQUIRE(pos != std::string::npos);
        auto brace = text.find('{', pos);
        auto close = text.find('}', brace);
        text.replace(brace, close - brace + 1, "\"2003-01\"");
        auto bad = tmp.path / "badwin.json";
        std::ofstream(bad) << text;
        CHECK_THROWS_AS(load_model(bad), SchemaError);
    }
}

TEST_CASE("price book loads every ticker file and the shares table") {
    TempDir tmp;
    fs::create_directories(tmp.path / "prices");
    write_file(tmp.path / "prices", "AAA.csv", "2003-01,10.0\n2003-02,11.0\n");
    write_file(tmp.path / "prices", "BBB.csv", "2003-01,20.0\n2003-02,21.0\n");
    auto shares = write_file(tmp.path, "shares.csv", "AAA,1000000\nBBB,2.5e8\n");

    PriceBook book = load_price_book(tmp.path / "prices", &shares);
    CHECK(book.prices.size() == 2);
    CHECK(book.prices.at("AAA").at({2003, 2}) == 11.0);
    CHECK(book.shares_outstanding.at("BBB") == 2.5e8);

    write_file(tmp.path, "bad_shares.csv", "AAA,-5\n");
    fs::path bad = tmp.path / "bad_shares.csv";
    CHECK_THROWS_AS(load_price_book(tmp.path / "prices", &bad), ParseError);
}

TEST_CASE("catalog load order does not change downstream results") {
    TempDir tmp;
    sim::Rng rng(5150);
    const char* names[4] = {"F", "H", "TS", "MEAT"};
    for (int i = 0; i < 4; ++i) {
        std::string body;
        MonthlyIndex t{2002, 1};
        auto vals = sim::random_walk(rng, 60, 100.0, 0.2, 0.6);
        for (double v : vals) {
            body += t.str() + "," + std::to_string(v) + "\n";
            t = t.plus_months(1);
        }
        write_file(tmp.path, std::string(names[i]) + ".csv", body);
    }
    auto m1 = write_file(tmp.path, "m1.csv", "F,F.csv\nH,H.csv\nTS,TS.csv\nMEAT,MEAT.csv\n");
    auto m2 = write_file(tmp.path, "m2.csv", "MEAT,MEAT.csv\nTS,TS.csv\nH,H.csv\nF,F.csv\n");

    CpiCatalog c1 = load_catalog(m1);
    CpiCatalog c2 = load_catalog(m2);
    CHECK(c1.acronyms() == c2.acronyms());
    for (const auto& a : c1.acronyms()) CHECK(c1.series(a) == c2.series(a));
}
