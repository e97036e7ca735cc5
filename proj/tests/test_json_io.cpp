// Copyright 2026 The bjlab Authors
// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include "bjlab/error.hpp"
#include "bjlab/json_io.hpp"

using namespace bjlab;

namespace
{

std::string schema_message(const Json &j)
{
  try
  {
    operator_from_json(j);
  }
  catch (const Error &e)
  {
    EXPECT_EQ(e.code(), ErrorCode::Schema);
    return e.what();
  }
  ADD_FAILURE() << "no schema error";
  return "";
}

}  // namespace

TEST(JsonIo, ParsesEveryOperatorKind)
{
  const OperatorRep d = operator_from_json(Json::parse(R"({"kind":"dense","p":2,"q":3,"matrix":[[1,2],[3,4]]})"));
  ASSERT_TRUE(std::holds_alternative<DenseOp>(d));
  EXPECT_EQ(std::get<DenseOp>(d).matrix(1, 0), 3.0);
  EXPECT_EQ(std::get<DenseOp>(d).q, 3.0);

  const OperatorRep s = operator_from_json(Json::parse(
    R"({"kind":"structured","p":2,"head":[[2]],"tail":{"family":"power","a":0.5,"b":1.0,"s":1.0,"overrides":[[1,1.0]]}})"));
  const auto &so = std::get<StructuredOp>(s);
  EXPECT_EQ(so.head_size(), 1u);
  EXPECT_DOUBLE_EQ(so.tail(1), 1.0);
  EXPECT_DOUBLE_EQ(so.tail(2), 1.0);

  const OperatorRep f = operator_from_json(Json::parse(R"({"kind":"coord_projection","p":2,"mask":{"finite":[1,3]}})"));
  EXPECT_TRUE(std::get<CoordProjection>(f).contains(3));
  const OperatorRep t = operator_from_json(
    Json::parse(R"({"kind":"coord_projection","p":2,"mask":{"tail_pattern":{"family":"periodic","pattern":[0,1]}}})"));
  EXPECT_TRUE(std::get<CoordProjection>(t).infinite_rank());

  const LpVector v = vector_from_json(Json::parse(R"({"p": 2.0, "coords": [3.0, 4.0]})"));
  EXPECT_DOUBLE_EQ(v.norm(), 5.0);
}

TEST(JsonIo, RoundTrip)
{
  const std::vector<std::string> docs = {
    R"({"kind":"dense","matrix":[[1.0,-2.5]],"p":1.5,"q":3.0})",
    R"({"head":[[0.25]],"kind":"structured","p":2.0,"tail":{"a":1.0,"family":"geometric","overrides":[[2,7.0]],"r":0.5}})",
    R"({"kind":"coord_projection","mask":{"finite":[1,4]},"n":5,"p":1.0})",
    R"({"kind":"coord_projection","mask":{"tail_pattern":{"family":"periodic","pattern":[1.0,0.0]}},"p":3.0})",
  };
  for (const std::string &doc : docs) EXPECT_EQ(canonical_dump(to_json(operator_from_json(Json::parse(doc)))), doc);
}

TEST(JsonIo, SchemaErrorsNameTheField)
{
  EXPECT_NE(schema_message(Json::parse(R"({"p":2})")).find("'op.kind'"), std::string::npos);
  EXPECT_NE(schema_message(Json::parse(R"({"kind":"cube","p":2})")).find("'op.kind'"), std::string::npos);
  EXPECT_NE(schema_message(Json::parse(R"({"kind":"dense","p":"x","matrix":[[1]]})")).find("'op.p'"), std::string::npos);
  EXPECT_NE(schema_message(Json::parse(R"({"kind":"dense","p":2,"matrix":[[1,2],[3]]})")).find("'op.matrix[1]'"),
            std::string::npos);
  EXPECT_NE(schema_message(Json::parse(R"({"kind":"structured","p":2,"tail":{"family":"power","a":1}})")).find("'op.tail.b'"),
            std::string::npos);
  EXPECT_NE(schema_message(Json::parse(R"({"kind":"structured","p":2,"tail":{"family":"geometric","a":1,"r":2}})")).find("'op.tail'"),
            std::string::npos);
  EXPECT_NE(schema_message(Json::parse(R"({"kind":"coord_projection","p":2,"mask":{"finite":[0]}})")).find("'op.mask.finite[0]'"),
            std::string::npos);
  EXPECT_NE(schema_message(Json::parse(R"({"kind":"dense","p":0.5,"matrix":[[1]]})")).find("'op'"), std::string::npos);
  EXPECT_THROW(read_json_file("/nonexistent/file.json"), Error);
}

TEST(JsonIo, CanonicalFormatting)
{
  Json j = {{"b", 1.0}, {"a", 0.1}, {"c", 3}, {"d", std::vector<double>{-2.0, 1e-20}}};
  EXPECT_EQ(canonical_dump(j), R"({"a":0.10000000000000001,"b":1.0,"c":3,"d":[-2.0,9.9999999999999995e-21]})");
  NormCertificate c;
  c.value = 2.0;
  EXPECT_EQ(to_json(c)["maximizer"], "not_attained");
}

TEST(JsonIo, SuiteCsvHasOneRowPerDetail)
{
  SuiteReport r;
  r.suite = "prop-3.8";
  r.seed = 7;
  r.details = {{"0", "mask=a, p=2", 1.0, 1.0, true, false, "x"}, {"1", "b", 0.0, 0.0, true, false, "say \"hi\""}};
  const std::string csv = to_csv(to_json(r));
  EXPECT_EQ(csv, "suite,seed,case_id,parameter,measured,bound,ok,unknown,note\n"
                 "prop-3.8,7,0,\"mask=a, p=2\",1.0,1.0,true,false,x\n"
                 "prop-3.8,7,1,b,0.0,0.0,true,false,\"say \"\"hi\"\"\"\n");
}
