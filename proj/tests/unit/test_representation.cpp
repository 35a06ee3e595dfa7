#include <gtest/gtest.h>

#include "deqt/error.hpp"
#include "deqt/representation.hpp"

using namespace deqt;

TEST(ChannelCount, PerRepresentation) {
  EXPECT_EQ(channel_count(Representation::global(3)), 4);
  EXPECT_EQ(channel_count(Representation::global(8)), 9);
  EXPECT_EQ(channel_count(Representation::compact()), 3);
  EXPECT_EQ(channel_count(Representation::local()), 2);
}

TEST(Encode, CompactCategories) {
  const auto rep = Representation::compact();
  EXPECT_EQ(encode_channel(rep, 5, false, Phase::Training), 2);
  EXPECT_EQ(encode_channel(rep, 2, false, Phase::Training), 2);
  EXPECT_EQ(encode_channel(rep, 1, false, Phase::Training), 1);
  EXPECT_EQ(encode_channel(rep, 0, false, Phase::Training), 0);
}

TEST(Encode, LocalSeesOnlyCurrentCell) {
  const auto rep = Representation::local();
  EXPECT_EQ(encode_channel(rep, 4, true, Phase::Training), 1);
  EXPECT_EQ(encode_channel(rep, 4, false, Phase::Training), 0);
  EXPECT_EQ(encode_channel(rep, 0, true, Phase::Testing), 1);
}

TEST(Encode, GlobalTestingHoldsAtTrainingCount) {
  const auto rep = Representation::global(3);
  EXPECT_EQ(encode_channel(rep, 8, false, Phase::Testing), 3);
  EXPECT_EQ(encode_channel(rep, 3, false, Phase::Testing), 3);
  EXPECT_EQ(encode_channel(rep, 2, false, Phase::Testing), 2);
  EXPECT_EQ(encode_channel(rep, 0, false, Phase::Testing), 0);
}

TEST(Encode, GlobalTrainingRejectsExcessFlags) {
  EXPECT_THROW(encode_channel(Representation::global(3), 4, false, Phase::Training), UsageError);
  EXPECT_THROW(encode_channel(Representation::compact(), -1, false, Phase::Training), UsageError);
}

TEST(Encode, CarriesPosition) {
  const StateIndex s = encode(Representation::global(2), {4, 7}, 1, false, Phase::Training);
  EXPECT_EQ(s, (StateIndex{4, 7, 1}));
}

TEST(Encode, Invariants) {
  for (int n = 1; n <= 8; ++n) {
    const auto rep = Representation::global(n);
    int previous = channel_count(rep);
    for (int remaining = n; remaining >= 0; --remaining) {
      const int c = encode_channel(rep, remaining, false, Phase::Training);
      EXPECT_LT(c, channel_count(rep));
      // One pickup lowers the channel by exactly one; zero only when all are collected.
      EXPECT_EQ(c, remaining);
      EXPECT_EQ(previous - c, 1);
      EXPECT_EQ(c == 0, remaining == 0);
      previous = c;
    }
    int last = channel_count(rep);
    for (int remaining = 8; remaining >= 0; --remaining) {
      const int c = encode_channel(rep, remaining, false, Phase::Testing);
      EXPECT_LT(c, channel_count(rep));
      EXPECT_LE(c, last);
      last = c;
    }
  }
  for (const auto rep : {Representation::compact(), Representation::local()}) {
    for (int remaining = 0; remaining <= 8; ++remaining) {
      for (bool here : {false, true}) {
        const int train = encode_channel(rep, remaining, here, Phase::Training);
        EXPECT_EQ(train, encode_channel(rep, remaining, here, Phase::Testing));
        EXPECT_LT(train, channel_count(rep));
      }
    }
  }
}

TEST(RepresentationType, NamesRoundTrip) {
  for (auto t : {RepresentationType::Global, RepresentationType::CompactGlobal, RepresentationType::Local}) {
    EXPECT_EQ(parse_representation_type(to_string(t)), t);
  }
  EXPECT_THROW(parse_representation_type("bitmask"), UsageError);
}
