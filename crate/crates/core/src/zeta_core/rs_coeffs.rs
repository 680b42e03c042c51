// Generated by tools/gen_rs_coeffs.py. Do not edit by hand.
//
// C_k(z) for z = 2p - 1. Even k are even polynomials and odd k are odd, so
// only the nonzero parity is stored: C_k(z) = z^(k mod 2) * sum_j c[j] z^(2j).

pub(crate) const MAX_TERMS: usize = 10;

pub(crate) static RS_COEFFS: [&[f64]; MAX_TERMS] = [
    &[
        0.3826834323650898,
        0.43724046807752043,
        0.1323765754803435,
        -0.013605026047674188,
        -0.013567621970103581,
        -0.0016237253231444653,
        0.0002970535373337969,
        7.94330087952147e-05,
        4.6556124614504504e-07,
        -1.4327251630955106e-06,
        -1.0354847112312946e-07,
        1.2357927083861738e-08,
        1.7881083857954906e-09,
        -3.391414389927036e-11,
        -1.6326633902565907e-11,
        -3.7851093185412205e-13,
        9.327423259201725e-14,
        5.221843015978137e-15,
        -3.350673072744264e-16,
        -3.4124265228117265e-17,
        5.751203341432399e-19,
        1.4895301363211506e-19,
        1.2565372717021416e-21,
    ],
    &[
        -0.026825102628375348,
        0.013784773426351853,
        0.03849125048223508,
        0.009871066299062077,
        -0.0033107597608584044,
        -0.0014647808577954152,
        -1.3207940624876963e-05,
        5.9227487018471416e-05,
        5.980242585373449e-06,
        -9.641322456169826e-07,
        -1.8334733722714413e-07,
        4.4670875627178334e-09,
        2.7096350821772744e-09,
        7.785288654315851e-11,
        -2.343762601089369e-11,
        -1.5830172789987521e-12,
        1.211994157372379e-13,
        1.4583781161108306e-14,
        -2.878630525813192e-16,
        -8.662862902123724e-17,
        -8.430722727137041e-19,
        3.6308072230973464e-19,
        1.1626698212838296e-20,
        -1.0975486711527531e-21,
    ],
    &[
        0.005188542830293168,
        0.00030946583880634744,
        -0.011335941078229373,
        0.0022330457419581446,
        0.00519663740886233,
        0.0003439914407620834,
        -0.0005910648427470583,
        -0.00010229972547935857,
        2.0888392216992754e-05,
        5.927665493096536e-06,
        -1.6423838362436276e-07,
        -1.5161199700940684e-07,
        -5.907803698206668e-09,
        2.0911514859478188e-09,
        1.781564958329235e-10,
        -1.6164072455353832e-11,
        -2.3806962496667617e-12,
        5.398265295542595e-14,
        1.9750142196969516e-14,
        2.3332868732882633e-16,
        -1.118751761004808e-16,
        -4.164009488883767e-18,
        4.446081109291883e-19,
        2.8546114783637145e-20,
        -1.1913231430037894e-21,
    ],
    &[
        -0.0013397160907194568,
        0.003744215136379394,
        -0.0013303178919321468,
        -0.0022654660765471786,
        0.0009548499998506731,
        0.0006010038458963604,
        -0.00010128858286776622,
        -6.865733449299826e-05,
        5.985366791538599e-07,
        3.331659851239947e-06,
        2.1919289102435082e-07,
        -7.890884245681494e-08,
        -9.414685081295262e-09,
        9.57011621088348e-10,
        1.8763137453470662e-10,
        -4.4378376793233995e-12,
        -2.242673850561735e-12,
        -3.6276868657352434e-14,
        1.7639809550821582e-14,
        7.960765246786778e-16,
        -9.419651490589691e-17,
        -7.133103854569658e-18,
        3.2899105845546245e-19,
        4.1807303748984594e-20,
    ],
    &[
        0.00046483389361763383,
        -0.001005660736534047,
        0.00024044856573725794,
        0.0010283086149702322,
        -0.0007657861071755644,
        -0.00020365286803084818,
        0.0002321229049106873,
        3.2602144243865195e-05,
        -2.5579062517949524e-05,
        -4.107464438915745e-06,
        1.1781113640371294e-06,
        2.445656142248458e-07,
        -2.3915824767344323e-08,
        -7.505214207035756e-09,
        1.3312279416258429e-10,
        1.344062675422562e-10,
        3.513770042430486e-12,
        -1.519154453370392e-12,
        -8.915417681447087e-14,
        1.1195891165228536e-14,
        1.0516013329914816e-15,
        -5.1786552736466835e-17,
        -8.065874861916566e-18,
        1.0608204530563966e-19,
        4.433680674299409e-20,
    ],
    &[
        0.00011343405922868681,
        0.00013851558567147984,
        -0.0005068306017359404,
        0.00041222682854677667,
        5.0212503923893044e-05,
        -0.00018583330293362498,
        2.750486803301064e-05,
        3.156913243559333e-05,
        -4.2177259041220196e-06,
        -2.9158997804790636e-06,
        1.5653784955844681e-07,
        1.4652135593176926e-07,
        1.2200158650611429e-09,
        -4.161924475909784e-09,
        -2.0939812749734364e-10,
        7.083955086672488e-11,
        6.023001444442243e-12,
        -7.454153644214176e-13,
        -9.432313173635468e-14,
        4.63034208562233e-15,
        9.637605904062081e-16,
        -1.0449402845048073e-17,
        -6.93872452014127e-18,
        -9.733002096569541e-20,
        3.6629872527676776e-20,
        1.2513209119357638e-21,
    ],
    &[
        3.369099840108094e-05,
        -0.00012182596819343517,
        0.00021820650719505934,
        -0.00016619033454413337,
        -3.110176899016765e-05,
        0.00012085816038756387,
        -4.51514678364552e-05,
        -1.8550769189257536e-05,
        1.1616261484368335e-05,
        1.5516054414965867e-06,
        -1.173183613638087e-06,
        -1.2201406611672693e-07,
        5.938091048879949e-08,
        7.0119971278102854e-09,
        -1.644509235965503e-09,
        -2.413847792012177e-10,
        2.588538684310006e-11,
        5.11928726139503e-12,
        -2.1541595758904304e-13,
        -7.134227452688869e-14,
        2.8785597934103785e-16,
        6.883513880945692e-16,
        1.5208914446850878e-17,
        -4.760198156157085e-18,
        -2.092936377194933e-19,
        2.3950948998138926e-20,
        1.6148542045659366e-21,
    ],
    &[
        3.306239959139952e-05,
        -5.583801197167342e-05,
        3.38757252127791e-05,
        3.928549915442036e-05,
        -7.590133889708718e-05,
        3.763650752641637e-05,
        7.75875212898364e-06,
        -1.2434681009031702e-05,
        1.3758660974089538e-06,
        1.5381436320507913e-06,
        -2.4692335216114254e-07,
        -1.1303748841071982e-07,
        1.4065380576820329e-08,
        5.3302209994313445e-09,
        -3.594283526285034e-10,
        -1.609146884319826e-10,
        3.4053984355486287e-12,
        3.1750244960695343e-12,
        3.862417137390637e-14,
        -4.237052713611464e-14,
        -1.5991933724677905e-15,
        3.939048539223848e-16,
        2.4001639971157294e-17,
        -2.586051085421689e-18,
        -2.2700871443308316e-19,
        1.1748873138457931e-20,
        1.5334672723675986e-21,
    ],
    &[
        2.4197536136117965e-06,
        -4.028380692676013e-06,
        1.3573801583121782e-05,
        -3.662743047420052e-05,
        4.512746795456113e-05,
        -2.336374918075876e-05,
        -3.79170029208223e-06,
        1.025723707028558e-05,
        -3.1689290012248423e-06,
        -1.0319159039853272e-06,
        6.297345327606051e-07,
        4.1686604881939493e-08,
        -5.378631444658436e-08,
        -1.4153446763913294e-09,
        2.616924263058847e-09,
        8.632205275861301e-11,
        -7.863547640798744e-11,
        -3.981580682374462e-12,
        1.5272973816746164e-12,
        1.0788522406038325e-13,
        -1.9808957372871652e-14,
        -1.8541427835015355e-15,
        1.7388912945712539e-16,
        2.1825209026684958e-17,
        -1.0019236998655075e-18,
        -1.8578745495353616e-19,
        3.076092119316026e-21,
        1.1877855239886505e-21,
    ],
    &[
        6.884120503027345e-06,
        -1.3545533780523584e-05,
        2.1754023152211477e-05,
        -2.199475516585996e-05,
        1.0178284429930488e-05,
        3.8363101444274505e-06,
        -7.919629169063572e-06,
        3.5151967004321614e-06,
        3.7347988972624764e-07,
        -7.600058623543953e-07,
        1.1390878442965699e-07,
        6.614344745943316e-08,
        -1.554004796612315e-08,
        -3.623234093309804e-09,
        8.813175526299378e-10,
        1.4670998190011627e-10,
        -2.7908712271236326e-11,
        -4.3686394460535956e-12,
        5.397389908013263e-13,
        9.262633460098316e-14,
        -6.5431349032226816e-15,
        -1.3980829940397601e-15,
        4.684257177175832e-17,
        1.532698984815314e-17,
        -1.1174990187544544e-19,
        -1.2504120718383387e-19,
        -1.5591110275132796e-21,
    ],
];
