#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "streamveil/ingest.hpp"
#include "streamveil/synth.hpp"

using namespace streamveil;
using testutil::TempDir;

namespace {

const char* kMinimalArff =
    "@relation tiny\n"
    "@attribute a numeric\n"
    "@attribute b numeric\n"
    "@attribute class {Up,Down}\n"
    "@data\n"
    "1.0,2.0,Up\n";

DatasetSource arff_source(const std::filesystem::path& p) {
  return DatasetSource{p, DataFormat::Arff, std::nullopt};
}

DatasetSource csv_source(const std::filesystem::path& p) {
  return DatasetSource{p, DataFormat::Csv, std::nullopt};
}

}  // namespace

TEST_CASE("load_arff parses a minimal file") {
  TempDir dir;
  const Dataset data = load_arff(arff_source(dir.write("tiny.arff", kMinimalArff)));

  REQUIRE(data.schema.attributes().size() == 3);
  CHECK(data.schema.attributes()[0].role == AttributeRole::NumericFeature);
  CHECK(data.schema.attributes()[1].role == AttributeRole::NumericFeature);
  CHECK(data.schema.attributes()[2].role == AttributeRole::ClassLabel);
  CHECK(data.schema.class_domain() == std::vector<std::string>{"Up", "Down"});

  REQUIRE(data.instances.size() == 1);
  CHECK(data.instances[0].numeric == std::vector<double>{1.0, 2.0});
  CHECK(data.instances[0].label == "Up");
  CHECK(data.instances[0].sequence_id == 0);
}

TEST_CASE("load_arff skips comments, keeps order, assigns sequence ids") {
  TempDir dir;
  const auto path = dir.write("multi.arff",
                              "% leading comment\n"
                              "@RELATION demo\n"
                              "\n"
                              "@ATTRIBUTE a NUMERIC\n"
                              "@attribute 'the class' {x, y}\n"
                              "@DATA\n"
                              "% data comment\n"
                              "1,x\n"
                              "\n"
                              "2,y\n"
                              "3,x\n");
  const Dataset data = load_arff(arff_source(path));
  REQUIRE(data.instances.size() == 3);
  CHECK(data.schema.attributes()[1].name == "the class");
  for (std::size_t i = 0; i < 3; ++i)
    CHECK(data.instances[i].sequence_id == static_cast<std::int64_t>(i));
  CHECK(data.instances[1].label == "y");
}

TEST_CASE("load_arff keeps nominal features distinct from the class") {
  TempDir dir;
  // two nominal attributes: the LAST one becomes the class
  const auto path = dir.write("nom.arff",
                              "@relation nom\n"
                              "@attribute size {S,M,L}\n"
                              "@attribute x numeric\n"
                              "@attribute verdict {ok,bad}\n"
                              "@data\n"
                              "S,1.5,ok\n"
                              "L,2.5,bad\n");
  const Dataset data = load_arff(arff_source(path));
  CHECK(data.schema.attributes()[0].role == AttributeRole::NominalFeature);
  CHECK(data.schema.attributes()[2].role == AttributeRole::ClassLabel);
  CHECK(data.instances[0].nominal == std::vector<std::string>{"S"});
  CHECK(data.instances[1].label == "bad");
}

TEST_CASE("load_arff error paths carry line numbers") {
  TempDir dir;

  const auto domain = dir.write("domain.arff",
                                "@relation r\n"
                                "@attribute a numeric\n"
                                "@attribute class {Up,Down}\n"
                                "@data\n"
                                "1.0,Sideways\n");
  try {
    load_arff(arff_source(domain));
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 5);
    CHECK(testutil::contains(e, "Sideways"));
  }

  const auto missing = dir.write("missing.arff",
                                 "@relation r\n"
                                 "@attribute a numeric\n"
                                 "@attribute class {Up,Down}\n"
                                 "@data\n"
                                 "?,Up\n");
  try {
    load_arff(arff_source(missing));
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 5);
    CHECK(testutil::contains(e, "missing value"));
  }

  const auto sparse = dir.write("sparse.arff",
                                "@relation r\n"
                                "@attribute a numeric\n"
                                "@attribute class {Up,Down}\n"
                                "@data\n"
                                "{0 1.0, 1 Up}\n");
  CHECK_THROWS_AS(load_arff(arff_source(sparse)), ParseError);

  const auto arity = dir.write("arity.arff",
                               "@relation r\n"
                               "@attribute a numeric\n"
                               "@attribute class {Up,Down}\n"
                               "@data\n"
                               "1.0,2.0,Up\n");
  CHECK_THROWS_AS(load_arff(arff_source(arity)), ParseError);

  const auto text = dir.write("string.arff",
                              "@relation r\n"
                              "@attribute a string\n"
                              "@attribute class {Up,Down}\n"
                              "@data\n");
  CHECK_THROWS_AS(load_arff(arff_source(text)), ParseError);

  const auto numeric_only = dir.write("numonly.arff",
                                      "@relation r\n"
                                      "@attribute a numeric\n"
                                      "@data\n"
                                      "1.0\n");
  try {
    load_arff(arff_source(numeric_only));
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(testutil::contains(e, "no nominal attribute"));
  }

  const auto bad_number = dir.write("nan.arff",
                                    "@relation r\n"
                                    "@attribute a numeric\n"
                                    "@attribute class {Up,Down}\n"
                                    "@data\n"
                                    "oops,Up\n");
  try {
    load_arff(arff_source(bad_number));
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 5);
    CHECK(testutil::contains(e, "oops"));
  }

  CHECK_THROWS_AS(load_arff(arff_source(dir.path() / "does-not-exist.arff")), IoError);
}

TEST_CASE("load_csv infers types and the class column") {
  TempDir dir;
  const auto path = dir.write("t.csv",
                              "a,b,class\n"
                              "1.0,red,Up\n"
                              "2.5,blue,Down\n"
                              "3.5,red,Up\n");
  const Dataset data = load_csv(csv_source(path));
  CHECK(data.schema.attributes()[0].role == AttributeRole::NumericFeature);
  CHECK(data.schema.attributes()[1].role == AttributeRole::NominalFeature);
  CHECK(data.schema.attributes()[2].role == AttributeRole::ClassLabel);
  // domain in order of first appearance
  CHECK(data.schema.class_domain() == std::vector<std::string>{"Up", "Down"});
  REQUIRE(data.instances.size() == 3);
  CHECK(data.instances[2].numeric == std::vector<double>{3.5});
  CHECK(data.instances[2].nominal == std::vector<std::string>{"red"});
}

TEST_CASE("load_csv treats a mixed column as nominal") {
  TempDir dir;
  const auto path = dir.write("mixed.csv",
                              "v,class\n"
                              "1.0,A\n"
                              "x,B\n");
  // the only feature column is nominal -> schema construction fails
  // (at least one numeric feature is required)
  CHECK_THROWS_AS(load_csv(csv_source(path)), ValidationError);

  const auto ok = dir.write("mixed2.csv",
                            "v,w,class\n"
                            "1.0,2.0,A\n"
                            "x,3.0,B\n");
  const Dataset data = load_csv(csv_source(ok));
  CHECK(data.schema.attributes()[0].role == AttributeRole::NominalFeature);
  CHECK(data.schema.attributes()[1].role == AttributeRole::NumericFeature);
  CHECK(data.instances[1].nominal == std::vector<std::string>{"x"});
}

TEST_CASE("load_csv error paths") {
  TempDir dir;

  CHECK_THROWS_AS(load_csv(csv_source(dir.write("empty.csv", ""))), ParseError);
  CHECK_THROWS_AS(load_csv(csv_source(dir.write("headeronly.csv", "a,class\n"))),
                  ParseError);

  const auto ragged = dir.write("ragged.csv",
                                "a,b,class\n"
                                "1.0,2.0,Up\n"
                                "1.0,Up\n");
  try {
    load_csv(csv_source(ragged));
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }

  const auto missing = dir.write("missing.csv",
                                 "a,class\n"
                                 "?,Up\n");
  CHECK_THROWS_AS(load_csv(csv_source(missing)), ParseError);

  CHECK_THROWS_AS(load_csv(csv_source(dir.path() / "absent.csv")), IoError);
}

TEST_CASE("load_csv handles quoted fields and CRLF") {
  TempDir dir;
  const auto path = dir.write("quoted.csv",
                              "x,\"the label\"\r\n"
                              "1.0,\"Up, really\"\r\n"
                              "2.0,Down\r\n");
  const Dataset data = load_csv(csv_source(path));
  CHECK(data.schema.attributes()[1].name == "the label");
  CHECK(data.instances[0].label == "Up, really");
  CHECK(data.instances[1].label == "Down");
}

TEST_CASE("declared schema overrides inference") {
  TempDir dir;
  // numbers everywhere, but the declared schema calls column b nominal
  const auto path = dir.write("declared.csv",
                              "a,b,class\n"
                              "1.0,2,Up\n"
                              "3.0,4,Down\n");
  Schema declared({{"a", AttributeRole::NumericFeature, false},
                   {"b", AttributeRole::NominalFeature, false},
                   {"class", AttributeRole::ClassLabel, false}},
                  {"Up", "Down", "Flat"});
  const Dataset data = load_csv({path, DataFormat::Csv, declared});
  CHECK(data.schema == declared);
  CHECK(data.instances[0].nominal == std::vector<std::string>{"2"});

  Schema narrow({{"a", AttributeRole::NumericFeature, false},
                 {"class", AttributeRole::ClassLabel, false}},
                {"Up", "Down"});
  CHECK_THROWS_AS(load_csv({path, DataFormat::Csv, narrow}), ParseError);
}

TEST_CASE("load dispatches on the declared format") {
  TempDir dir;
  const auto arff = dir.write("d.arff", kMinimalArff);
  CHECK(load({arff, DataFormat::Arff, std::nullopt}).instances.size() == 1);
  const auto csv = dir.write("d.csv", "a,class\n1.0,Up\n");
  CHECK(load({csv, DataFormat::Csv, std::nullopt}).instances.size() == 1);
}

TEST_CASE("write_csv round-trips through load_csv exactly") {
  TempDir dir;
  const Schema schema({{"x", AttributeRole::NumericFeature, false},
                       {"tag", AttributeRole::NominalFeature, false},
                       {"y", AttributeRole::NumericFeature, false},
                       {"class", AttributeRole::ClassLabel, false}},
                      {"Up", "Down"});
  std::vector<Instance> instances;
  Instance a;
  a.numeric = {0.1, -2.5e-7};  // 0.1 is not exactly representable; round-trip must hold
  a.nominal = {"red, ish"};
  a.label = "Up";
  a.sequence_id = 0;
  Instance b;
  b.numeric = {1.0 / 3.0, 12345.678901234567};
  b.nominal = {"blue"};
  b.label = "Down";
  b.sequence_id = 1;
  instances = {a, b};

  const auto path = dir.path() / "roundtrip.csv";
  write_csv(schema, instances, path);
  const Dataset back = load_csv(csv_source(path));

  CHECK(back.schema == schema);
  REQUIRE(back.instances.size() == 2);
  CHECK(back.instances[0] == instances[0]);
  CHECK(back.instances[1] == instances[1]);
}

TEST_CASE("synth_gaussian_stream shape, labels and determinism") {
  const Dataset a = synth_gaussian_stream(3, 2, 40, 8.0, 1.0, 99);
  const Dataset b = synth_gaussian_stream(3, 2, 40, 8.0, 1.0, 99);
  const Dataset c = synth_gaussian_stream(3, 2, 40, 8.0, 1.0, 100);

  CHECK(a.schema.numeric_count() == 2);
  CHECK(a.schema.class_domain() == std::vector<std::string>{"c0", "c1", "c2"});
  REQUIRE(a.instances.size() == 120);

  // round-robin interleave: labels cycle c0, c1, c2
  for (std::size_t i = 0; i < a.instances.size(); ++i) {
    CHECK(a.instances[i].label == "c" + std::to_string(i % 3));
    CHECK(a.instances[i].sequence_id == static_cast<std::int64_t>(i));
  }

  CHECK(a.instances == b.instances);  // determinism
  CHECK(a.instances != c.instances);  // seed actually matters
}

TEST_CASE("synth_gaussian_stream blob means stay near their centers") {
  std::vector<std::vector<double>> centers;
  const int per_cluster = 500;
  const double spread = 1.0;
  const Dataset data = synth_gaussian_stream(4, 3, per_cluster, 10.0, spread, 7, &centers);
  REQUIRE(centers.size() == 4);

  // centers honor the separation floor
  for (std::size_t i = 0; i < centers.size(); ++i) {
    for (std::size_t j = i + 1; j < centers.size(); ++j) {
      double dist2 = 0.0;
      for (std::size_t d = 0; d < 3; ++d)
        dist2 += (centers[i][d] - centers[j][d]) * (centers[i][d] - centers[j][d]);
      CHECK(std::sqrt(dist2) >= 10.0);
    }
  }

  const double tol = 3.0 * spread / std::sqrt(static_cast<double>(per_cluster));
  for (int c = 0; c < 4; ++c) {
    std::vector<double> mean(3, 0.0);
    int count = 0;
    for (const auto& inst : data.instances) {
      if (inst.label != "c" + std::to_string(c)) continue;
      ++count;
      for (std::size_t d = 0; d < 3; ++d) mean[d] += inst.numeric[d];
    }
    REQUIRE(count == per_cluster);
    for (std::size_t d = 0; d < 3; ++d) {
      mean[d] /= count;
      CHECK(std::abs(mean[d] - centers[c][d]) <= tol);
    }
  }
}

TEST_CASE("synth_gaussian_stream single cluster and validation") {
  const Dataset one = synth_gaussian_stream(1, 2, 10, 5.0, 0.5, 3);
  for (const auto& inst : one.instances) CHECK(inst.label == "c0");

  CHECK_THROWS_AS(synth_gaussian_stream(0, 2, 10, 5.0, 1.0, 3), ValidationError);
  CHECK_THROWS_AS(synth_gaussian_stream(2, 0, 10, 5.0, 1.0, 3), ValidationError);
  CHECK_THROWS_AS(synth_gaussian_stream(2, 2, 0, 5.0, 1.0, 3), ValidationError);
  CHECK_THROWS_AS(synth_gaussian_stream(2, 2, 10, 0.0, 1.0, 3), ValidationError);
  CHECK_THROWS_AS(synth_gaussian_stream(2, 2, 10, 5.0, 0.0, 3), ValidationError);
}
