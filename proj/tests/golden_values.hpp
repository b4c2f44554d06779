#pragma once

// Generated by tests/oracles/generate_golden.py (mpmath, 30 digits). Do not edit.

namespace golden {

inline constexpr long double kLgamma[][2] = {
    {0.1L, 2.252712651734205959869702L},
    {0.5L, 0.5723649429247000870717137L},
    {2.5L, 0.2846828704729191596324947L},
    {17.0L, 30.67186010608067280375837L},
    {1234.5L, 7550.550901077894895729836L},
};
inline constexpr long double kDigamma[][2] = {
    {0.1L, -10.42375494041107679516822L},
    {1.0L, -0.5772156649015328606065121L},
    {2.5L, 0.7031566406452431872256903L},
    {30.0L, 3.384438132685524876561928L},
    {10000.0L, 9.210290371142849403571966L},
};
inline constexpr long double kIncGamma[][4] = {
    {0.3L, 0.01L, 0.2792409963590148455424296L, 0.7207590036409851544575704L},
    {0.3L, 50.0L, 0.9999999999999999999999959L, 4.113143423806661781020899e-24L},
    {2.5L, 1.0L, 0.1508549639153903637741069L, 0.8491450360846096362258931L},
    {2.5L, 10.0L, 0.9987502694369686245881489L, 0.001249730563031375411851065L},
    {100.0L, 90.0L, 0.1582209891864301681049697L, 0.8417790108135698318950303L},
    {100.0L, 115.0L, 0.9283881414754461069408396L, 0.07161185852455389305916039L},
    {0.7L, 1.0e-6L, 6.943981825350873644528629e-5L, 0.9999305601817464912635547L},
    {20.2L, 3.0L, 5.646878489237745163531083e-11L, 0.9999999999435312151076225L},
};
inline constexpr long double kKummer[][4] = {
    {0.5L, 1.5L, 10.0L, 1168.230463579438929646462L},
    {1.5L, 4.0L, -30.0L, 0.02545206442061784302450759L},
    {2.0L, 3.5L, 200.0L, 8.426711218469049274191484e+83L},
    {1.5L, 1.2L, -150.0L, -0.0001170395794539651042280429L},
    {0.5L, 4.0L, 96.9L, 4.662656684827395817206139e+35L},
    {0.5L, 4.0L, 103.1L, 1.847099217159136207353512e+38L},
    {1.5L, 1.6L, 0.3L, 1.326065997408800026708747L},
    {4.0L, 0.5L, -3.5L, 0.1441165584717091663861011L},
    {1.2L, 1.2L, 40.0L, 2.353852668370199854078999e+17L},
};
inline constexpr long double kGauss[][5] = {
    {1.5L, -0.6666666666666667L, 1.6L, -0.7L, 1.399163063454011065365934L},
    {0.5L, -0.5L, 4.0L, -31.8L, 2.024653396332233410752503L},
    {1.2L, -2.0L, 1.2L, -1.0L, 4.0L},
    {2.0L, 3.0L, 4.0L, 0.5L, 2.728935333122625147972858L},
    {4.0L, -0.4L, 0.5L, -63.6L, 14.74925704792082923133157L},
};
inline constexpr long double kGaussDa[][5] = {
    {1.2L, 1.5L, 1.2L, 0.5L, 2.348881369644123487130468L},
    {0.5L, 4.0L, 0.5L, 0.3L, 8.299008104511675371687045L},
    {3.0L, 3.0L, 3.0L, 0.9L, 2302.585092994045684017991L},
};
inline constexpr long double kPhi2[][6] = {
    {1.0L, 1.5L, 2.6L, 3.0L, 1.5L, 8.273088204733821651605199L},
    {0.5L, 2.0L, 1.5L, -2.0L, 4.0L, 92.17974587904996141359307L},
    {1.0L, 0.5L, 5.0L, 12.0L, 9.0L, 358.2516297976748938409656L},
};
inline constexpr long double kMeijerAber11[][2] = {
    {0.001L, 0.0001900235718224481074343025L},
    {0.3L, 0.1396731974319556116528237L},
    {1.0L, 0.3919205649866567083111138L},
    {2.5L, 0.6759920506300760237298374L},
    {40.0L, 1.344064876400625168716198L},
    {10000.0L, 1.609239978297622848756215L},
};
inline constexpr long double kMeijerAber32[][2] = {
    {0.001L, 0.04627848873715255842142804L},
    {0.3L, 1.020693577666334061929222L},
    {1.0L, 1.713892505111138414907785L},
    {2.5L, 2.420110145282229331962649L},
    {40.0L, 5.286244944695184473566956L},
    {10000.0L, 10.85696707009256031920039L},
};
inline constexpr long double kMeijerCap11[][2] = {
    {0.001L, 6.080571889024818438174238L},
    {0.3L, 1.265426508340384896755947L},
    {1.0L, 0.632313303772786031062982L},
    {2.5L, 0.3268412046467836673303101L},
    {40.0L, 0.02682508477166286713570863L},
    {10000.0L, 0.0001101681318453206612705752L},
};
inline constexpr long double kMeijerCap32[][2] = {
    {0.001L, 104.45539845101624149296L},
    {0.3L, 35.61740881246311664714333L},
    {1.0L, 26.53778224529558037870539L},
    {2.5L, 20.90115004573170522547167L},
    {40.0L, 9.502698230350697488449386L},
    {10000.0L, 1.659243470244330748477788L},
};
inline constexpr long double kFig1Channel[][5] = {
    {1.0L, 0.2443632046691529701445535L, 0.3221762696257076486975731L, 0.02862515131644536864806224L, 0.7213820544724734575330286L},
    {2.0L, 0.3125L, 0.3640360363838407099603759L, 0.03754564727946655466251025L, 0.6064523241607671620038609L},
    {3.0L, 0.345574722927138661269973L, 0.2625520230291312570005679L, 0.01815876096679191064799955L, 0.5586929827451062358658255L},
    {4.0L, 0.3651914697095621072933429L, 0.1587822195077463585177067L, 0.002801413719612353782573451L, 0.5327256043254502265646084L},
    {2.5L, 0.3314638518955953354622914L, 0.3188018242664613532633383L, 0.02950809450918322508612604L, 0.5784420203608529996165393L},
};
inline constexpr long double kFig1EnvelopeMoment4 = 16.43192373945850322668125L;
inline constexpr long double kFig2Aber[][3] = {
    {1.0L, 0.0L, 0.456043981512166085935779L},
    {1.0L, 20.0L, 0.08450073714857066587059326L},
    {1.0L, 40.0L, 0.006425230196453008717058663L},
    {2.0L, 0.0L, 0.3691638461821728344072585L},
    {2.0L, 20.0L, 0.01329833798360409379636242L},
    {2.0L, 40.0L, 5.839013403856395177005661e-5L},
    {3.0L, 0.0L, 0.3425481860855923913971974L},
    {3.0L, 20.0L, 0.003599857360254672225954285L},
    {3.0L, 40.0L, 9.678561143218740332408128e-7L},
    {4.0L, 0.0L, 0.3311254614841250759832649L},
    {4.0L, 20.0L, 0.001294136565024560608769554L},
    {4.0L, 40.0L, 2.170294173346443634559748e-8L},
};
inline constexpr long double kFig4Capacity20dB[][3] = {
    {0.5L, 1.0L, 3.473248725171583461361437L},
    {0.5L, 2.0L, 5.158892625042802545945219L},
    {0.5L, 4.0L, 6.107363276241595154186554L},
    {3.0L, 1.0L, 5.786598646436960320076254L},
    {3.0L, 2.0L, 6.411527692721318838046026L},
    {3.0L, 4.0L, 6.592701176348129060262625L},
};

}  // namespace golden
