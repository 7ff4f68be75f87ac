#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <string>

#include "anovabf/errors.hpp"
#include "anovabf/summary_parser.hpp"

using namespace anovabf;
using Catch::Matchers::WithinAbs;

TEST_CASE("parses published summary strings exactly") {
  SECTION("with p") {
    const auto s = parse_summary("F(1,17)=1.75, p=0.20");
    CHECK(s.df1 == 1);
    CHECK(s.df2 == 17);
    CHECK(s.f_value == 1.75);
    REQUIRE(s.reported_p.has_value());
    CHECK(*s.reported_p == 0.20);
    CHECK(s.p_relation == PRelation::Equal);
    CHECK_FALSE(s.n.has_value());
  }
  SECTION("bare") {
    const auto s = parse_summary("F(1,23)=4.35");
    CHECK(s.df1 == 1);
    CHECK(s.df2 == 23);
    CHECK(s.f_value == 4.35);
    CHECK_FALSE(s.reported_p.has_value());
    CHECK_FALSE(s.n.has_value());
  }
}

TEST_CASE("grammar violations carry offset and expected token") {
  SECTION("semicolon instead of comma") {
    try {
      parse_summary("F(1;17)=1.75");
      FAIL("expected parse_error");
    } catch (const parse_error& e) {
      CHECK(e.offset() == 4);
      CHECK(e.expected() == "','");
      CHECK(std::string(e.what()).find("offset 4") != std::string::npos);
    }
  }
  SECTION("empty input") {
    try {
      parse_summary("");
      FAIL("expected parse_error");
    } catch (const parse_error& e) {
      CHECK(e.offset() == 1);
      CHECK(e.expected() == "'F'");
    }
  }
  SECTION("trailing garbage") {
    CHECK_THROWS_AS(parse_summary("F(1,17)=1.75 x"), parse_error);
    CHECK_THROWS_AS(parse_summary("F(1,17)=1.75,"), parse_error);
  }
  SECTION("unicode minus is rejected, not normalized") {
    CHECK_THROWS_AS(parse_summary("F(1,17)=\xe2\x88\x92" "1.75"), parse_error);
  }
  SECTION("duplicate clauses") {
    CHECK_THROWS_AS(parse_summary("F(1,17)=1.75, p=0.2, p=0.3"), parse_error);
    CHECK_THROWS_AS(parse_summary("F(1,17)=1.75, n=18, N=20"), parse_error);
  }
  SECTION("missing pieces") {
    CHECK_THROWS_AS(parse_summary("F(,17)=1.75"), parse_error);
    CHECK_THROWS_AS(parse_summary("F(1,17)1.75"), parse_error);
    CHECK_THROWS_AS(parse_summary("G(1,17)=1.75"), parse_error);
    CHECK_THROWS_AS(parse_summary("F(1,17)="), parse_error);
  }
}

TEST_CASE("whitespace is insignificant between tokens") {
  const auto s = parse_summary("  F ( 1 , 17 ) = 1.75 , p = .20 , n = 18  ");
  CHECK(s.df1 == 1);
  CHECK(s.df2 == 17);
  CHECK(s.f_value == 1.75);
  CHECK(*s.reported_p == 0.20);
  CHECK(*s.n == 18);
}

TEST_CASE("optional clauses") {
  SECTION("n clause, capital N") {
    const auto s = parse_summary("F(2,294)=0, N=300");
    CHECK(s.df1 == 2);
    CHECK(*s.n == 300);
  }
  SECTION("clause order is free") {
    const auto s = parse_summary("F(1,17)=1.75, n=18, p=0.2");
    CHECK(*s.n == 18);
    CHECK(*s.reported_p == 0.2);
  }
  SECTION("p with comparison signs") {
    CHECK(parse_summary("F(1,10)=9.1, p<.05").p_relation == PRelation::Less);
    CHECK(parse_summary("F(1,10)=9.1, p < .05").p_relation == PRelation::Less);
    CHECK(parse_summary("F(1,10)=0.1, p>0.7").p_relation == PRelation::Greater);
    CHECK(*parse_summary("F(1,10)=9.1, p<.05").reported_p == 0.05);
  }
  SECTION("p without leading zero") {
    CHECK(*parse_summary("F(1,10)=9.1, p=.049").reported_p == 0.049);
  }
}

TEST_CASE("values that parse but violate constraints are validation errors") {
  CHECK_THROWS_AS(parse_summary("F(0,17)=1.75"), std::invalid_argument);
  CHECK_THROWS_AS(parse_summary("F(1,0)=1.75"), std::invalid_argument);
  CHECK_THROWS_AS(parse_summary("F(1,17)=-2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_summary("F(1,17)=1.75, p=1.5"), std::invalid_argument);
  CHECK_THROWS_AS(parse_summary("F(1,17)=1.75, n=1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_summary("F(1,17)=inf"), std::invalid_argument);
}

TEST_CASE("canonical formatting round-trips") {
  SECTION("example") {
    AnovaSummary s;
    s.f_value = 1.75;
    s.df1 = 1;
    s.df2 = 17;
    s.reported_p = 0.2;
    s.n = 18;
    CHECK(format_summary(s) == "F(1,17)=1.75, p=0.2, n=18");
  }
  SECTION("relation signs survive") {
    AnovaSummary s;
    s.f_value = 9.1;
    s.df1 = 1;
    s.df2 = 10;
    s.reported_p = 0.05;
    s.p_relation = PRelation::Less;
    CHECK(format_summary(s) == "F(1,10)=9.1, p<0.05");
  }
  SECTION("property: format then parse is the identity") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> f_dist(0.0, 200.0);
    std::uniform_int_distribution<int> df_dist(1, 500);
    std::uniform_int_distribution<int> n_dist(2, 100000);
    std::uniform_real_distribution<double> p_dist(1e-6, 0.999);
    std::uniform_int_distribution<int> coin(0, 2);

    for (int trial = 0; trial < 500; ++trial) {
      AnovaSummary s;
      s.f_value = f_dist(rng);
      s.df1 = df_dist(rng);
      s.df2 = df_dist(rng);
      if (coin(rng) != 0) s.n = n_dist(rng);
      if (coin(rng) != 0) {
        s.reported_p = p_dist(rng);
        s.p_relation = static_cast<PRelation>(coin(rng));
      }

      const std::string text = format_summary(s);
      CAPTURE(text);
      const auto back = parse_summary(text);
      CHECK(back.f_value == s.f_value);
      CHECK(back.df1 == s.df1);
      CHECK(back.df2 == s.df2);
      CHECK(back.n == s.n);
      CHECK(back.reported_p == s.reported_p);
      if (s.reported_p) CHECK(back.p_relation == s.p_relation);
    }
  }
}

TEST_CASE("parser survives arbitrary bytes") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> len_dist(0, 40);
  std::uniform_int_distribution<int> byte_dist(0, 255);
  const std::string alphabet = "F(),=<>.pnN 0123456789e-+";
  std::uniform_int_distribution<std::size_t> alpha_dist(0, alphabet.size() - 1);

  for (int trial = 0; trial < 10000; ++trial) {
    std::string text;
    const int len = len_dist(rng);
    const bool near_grammar = trial % 2 == 0;
    for (int i = 0; i < len; ++i) {
      text.push_back(near_grammar ? alphabet[alpha_dist(rng)]
                                  : static_cast<char>(byte_dist(rng)));
    }
    try {
      (void)parse_summary(text);
    } catch (const parse_error&) {
    } catch (const std::invalid_argument&) {
    }
  }
  SUCCEED("no aborts over 10000 random inputs");
}

TEST_CASE("check_p_consistency") {
  AnovaSummary s;
  s.f_value = 1.75;
  s.df1 = 1;
  s.df2 = 17;
  s.n = 18;

  SECTION("consistent report passes") {
    s.reported_p = 0.20;  // implied p is 0.2034
    CHECK_FALSE(check_p_consistency(s).has_value());
  }
  SECTION("gross mismatch warns") {
    s.reported_p = 0.90;
    CHECK(check_p_consistency(s) == Warning::PFMismatch);
  }
  SECTION("no reported p is a no-op") {
    CHECK_FALSE(check_p_consistency(s).has_value());
  }
  SECTION("tolerance is respected") {
    s.reported_p = 0.22;  // off by 0.017
    CHECK_FALSE(check_p_consistency(s, 0.02).has_value());
    CHECK(check_p_consistency(s, 0.01) == Warning::PFMismatch);
  }
  SECTION("'<' claims are only checked one-sidedly") {
    s.reported_p = 0.25;
    s.p_relation = PRelation::Less;  // "p < .25", implied 0.2034: fine
    CHECK_FALSE(check_p_consistency(s).has_value());
    s.reported_p = 0.05;  // "p < .05" is wrong
    CHECK(check_p_consistency(s) == Warning::PFMismatch);
  }
  SECTION("'>' claims mirror") {
    s.reported_p = 0.10;
    s.p_relation = PRelation::Greater;  // "p > .10", implied 0.2034: fine
    CHECK_FALSE(check_p_consistency(s).has_value());
    s.reported_p = 0.60;
    CHECK(check_p_consistency(s) == Warning::PFMismatch);
  }
}

TEST_CASE("collect_warnings") {
  AnovaSummary s;
  s.f_value = 1.75;
  s.df1 = 1;
  s.df2 = 17;

  SECTION("missing n") {
    const auto warnings = collect_warnings(s);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0] == Warning::NMissing);
  }
  SECTION("n at the df bound is fine") {
    s.n = 18;  // error df 17 <= n - 1
    CHECK(collect_warnings(s).empty());
  }
  SECTION("n below the df bound") {
    s.n = 17;
    const auto warnings = collect_warnings(s);
    REQUIRE(warnings.size() == 1);
    CHECK(warnings[0] == Warning::NLtDfBound);
  }
  SECTION("stable string codes") {
    CHECK(std::string(to_string(Warning::PFMismatch)) == "P_F_MISMATCH");
    CHECK(std::string(to_string(Warning::NMissing)) == "N_MISSING");
    CHECK(std::string(to_string(Warning::NLtDfBound)) == "N_LT_DF_BOUND");
  }
}
