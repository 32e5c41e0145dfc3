#include "hyperqaoa/config.hpp"
#include "hyperqaoa/error.hpp"
#include "hyperqaoa/parallel.hpp"
#include "hyperqaoa/random.hpp"

#include <gtest/gtest.h>

#include <atomic>

using namespace hyperqaoa;

TEST(KeyValues, Parse) {
  const auto kv = parse_key_values("# header\n a = 1 \n\nb=x, y # tail\n");
  ASSERT_EQ(kv.size(), 2u);
  EXPECT_EQ(kv[0].key, "a");
  EXPECT_EQ(kv[0].value, "1");
  EXPECT_EQ(kv[0].line, 2u);
  EXPECT_EQ(kv[1].value, "x, y");
  EXPECT_THROW(parse_key_values("novalue\n"), ParseError);
}

TEST(Scalars, Parse) {
  EXPECT_EQ(parse_double(" 0.25 "), 0.25);
  EXPECT_EQ(parse_int("-7"), -7);
  EXPECT_EQ(parse_uint64("18446744073709551615"), 18446744073709551615ull);
  EXPECT_TRUE(parse_bool("true"));
  EXPECT_FALSE(parse_bool("0"));
  EXPECT_THROW(parse_double("1.5x"), ParseError);
  EXPECT_THROW(parse_int("3.0"), ParseError);
  EXPECT_THROW(parse_uint64("-1"), ParseError);
  EXPECT_THROW(parse_bool("maybe"), ParseError);
}

TEST(Lists, ParseAndJoin) {
  EXPECT_EQ(parse_double_list("0, 0.1,0.2"), (std::vector<double>{0, 0.1, 0.2}));
  EXPECT_TRUE(parse_double_list("").empty());
  EXPECT_EQ(parse_int_list("1,2"), (std::vector<std::int64_t>{1, 2}));
  EXPECT_EQ(split_list("a;b", ';'), (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(join_doubles({0.1, 1.0 / 3}, ';'), "0.1;0.3333333333333333");
}

TEST(Random, DeterministicStreams) {
  Rng a(5), b(5);
  for (int i = 0; i < 10; ++i)
    EXPECT_EQ(a.next(), b.next());
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
  Rng u(1);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.uniform();
    EXPECT_GE(x, 0.0);
    EXPECT_LT(x, 1.0);
  }
}

TEST(ParallelFor, VisitsEveryIndexOnceAndRethrows) {
  std::vector<std::atomic<int>> hits(100);
  parallel_for(hits.size(), 4, [&](unsigned, std::size_t i) { ++hits[i]; });
  for (const auto &h : hits)
    EXPECT_EQ(h.load(), 1);
  EXPECT_THROW(parallel_for(10, 3,
                            [](unsigned, std::size_t i) {
                              if (i == 7)
                                throw Error("boom");
                            }),
               Error);
}
