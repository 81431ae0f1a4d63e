#include "ordref/fixtures.hpp"

#include "ordref/rivals.hpp"

namespace ordref {

ChoiceDataset allais_data(bool reverse) {
    auto x = prize_set({Rational(0), Rational(3000), Rational(4000)});
    std::vector<Alternative> alts{{"p1", lottery(x, {Rational(0), Rational(1), Rational(0)})},
                                  {"p2", lottery(x, {frac(1, 5), Rational(0), frac(4, 5)})},
                                  {"q1", lottery(x, {frac(3, 4), frac(1, 4), Rational(0)})},
                                  {"q2", lottery(x, {frac(4, 5), Rational(0), frac(1, 5)})}};
    std::vector<RawObservation> rows{{{"p1", "p2"}, {reverse ? "p2" : "p1"}}, {{"q1", "q2"}, {reverse ? "q1" : "q2"}}};
    return ChoiceDataset::build(PayloadKind::Lottery, std::move(alts), rows);
}

ChoiceDataset present_bias_data() {
    auto pay = [](long x, long t) { return DatedPayment{Rational(x), Rational(t)}; };
    return payment_data({{"a", pay(15, 0)}, {"b", pay(18, 0)}, {"c", pay(20, 1)}, {"d", pay(18, 3)}, {"e", pay(20, 4)}},
                        {{{"b", "c"}, {"b"}}, {{"d", "e"}, {"e"}}, {{"a", "d", "e"}, {"d"}}});
}

ChoiceDataset dictator_data() {
    auto split = [](long x, long y) { return IncomeSplit{Rational(x), Rational(y)}; };
    return split_data({{"give2", split(8, 2)}, {"give3", split(7, 3)}, {"give5", split(5, 5)}},
                      {{{"give2", "give3"}, {"give2"}}, {{"give2", "give3", "give5"}, {"give3"}}});
}

namespace {

struct Domain {
    FixtureInfo info;
    ChoiceDataset (*make)();
};

const std::vector<Domain>& domain_fixtures() {
    static const std::vector<Domain> all{
        {{"allais", "common-ratio pair: sure 3000 over 80% of 4000, then 20% of 4000 over 25% of 3000", Model::Areu},
         [] { return allais_data(false); }},
        {{"allais_reverse", "the reversed common-ratio pattern", Model::Areu}, [] { return allais_data(true); }},
        {{"present_bias", "$18 now over $20 tomorrow, $20 in 4 days over $18 in 3, $18 in 3 next to $15 now",
          Model::Pbdu},
         present_bias_data},
        {{"dictator", "give 2 of 10 from {2,3}, give 3 once an even split is offered", Model::Fspu}, dictator_data},
    };
    return all;
}

}  // namespace

std::vector<FixtureInfo> list_fixtures() {
    std::vector<FixtureInfo> out;
    for (const auto& name : fixture_names()) out.push_back({name, load_fixture(name).description, Model::Ordu});
    for (const auto& d : domain_fixtures()) out.push_back(d.info);
    return out;
}

ChoiceDataset fixture_dataset(const std::string& name) {
    for (const auto& d : domain_fixtures())
        if (d.info.name == name) return d.make();
    return load_fixture(name).data;
}

Model fixture_model(const std::string& name) {
    for (const auto& f : list_fixtures())
        if (f.name == name) return f.model;
    throw Error("UnknownFixture", "no fixture named '" + name + "'");
}

}  // namespace ordref
