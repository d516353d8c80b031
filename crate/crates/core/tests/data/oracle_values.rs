// Generated by an independent high-precision finite-difference evaluation. Do not edit.

pub const POINT: ([f64; 2], [f64; 2]) = ([0.3, -0.2], [0.7, 0.9]);

pub const GENERIC2_LH: [f64; 4] = [1.0717356090899524, 0.09463000876874145, 0.07173560908995227, 1.0973847630878195];
pub const GENERIC2_LV: [f64; 4] = [1.0995004165278026, 0.062160996827066446, 0.02674988286245874, 1.076484218728449];
pub const GENERIC2_CH: [f64; 4] = [0.9384827532625655, -0.061348247387974675, -0.08092752347012692, 0.9165476130342264];
pub const GENERIC2_CV: [f64; 4] = [0.9107835099412495, -0.022632335690685387, -0.05259269935092663, 0.9302568780152922];
pub const GENERIC2_N: [f64; 4] = [0.11481610809921272, 0.16180856904560956, 0.15040205274507365, 0.1723530904865014];

pub const CARTAN2_LH: [f64; 4] = [1.0841470984807897, -0.0029199522301288725, 0.08775825618903726, 1.0227977523535188];
pub const CARTAN2_LV: [f64; 4] = [0.9950041652780258, 0.09983341664682815, -0.09983341664682815, 0.9950041652780258];
pub const CARTAN2_CH: [f64; 4] = [0.9221709511039115, -0.07912425930820124, 0.002632676029097519, 0.9774845111284685];
pub const CARTAN2_CV: [f64; 4] = [0.9950041652780258, 0.09983341664682815, -0.09983341664682815, 0.9950041652780258];
pub const CARTAN2_N: [f64; 4] = [0.9, 0.9, -0.7, -0.7];

pub const BERWALD2_LH: [f64; 4] = [1.044328030999201, 0.14925062479170387, -0.07191383079063045, 1.1381591491004328];
pub const BERWALD2_LV: [f64; 4] = [1.1470099866761863, 0.014975012497024223, 0.0846963710092553, 1.1316373842835559];
pub const BERWALD2_CH: [f64; 4] = [0.9489841920618216, 0.05996093662723344, -0.12444347848420183, 0.8707488698119124];
pub const BERWALD2_CV: [f64; 4] = [0.8726847272336783, -0.06531529486248737, -0.01154827940273483, 0.8845396160100665];
pub const BERWALD2_N: [f64; 4] = [-0.10504326615127454, 0.031314156626385516, -0.022737370002247917, -0.059068837178447964];

pub const G2_GH_INV: [f64; 4] = [1.1537632134029174, 0.18013991447209235, 0.18013991447209235, 1.2132081568168818];
pub const G2_GV_INV: [f64; 4] = [1.2096167221779666, 0.09714186865741439, 0.09714186865741439, 1.1626822626979334];
pub const G2_CANONICAL_GH: [f64; 8] = [-0.05308723690244184, -0.04450013898353146, -0.05046891081307753, -0.11312453573137585, 0.017958563055808393, 0.018638066145669832, 0.03547967835542388, 0.012785440210888685];
pub const G2_CANONICAL_GV: [f64; 8] = [0.01035874908131116, 0.006090344616687245, -0.01690514429794529, -0.10603219412563497, -0.016416126791765587, 0.058366905553028536, 0.05599327714447818, -0.0027124422995932385];
pub const G2_CANONICAL_CH: [f64; 8] = [-0.06538472308046298, 0.005638274857248763, 0.004274173556189167, -0.0638564871437075, -0.0036773805701473604, 0.06068033656222459, 0.041648307513465044, -0.003966649665178678];
pub const G2_CANONICAL_CV: [f64; 8] = [0.014160275557579614, -0.019227888152856698, -0.0898616092750977, 0.17949727221032552, -0.06456789378990689, 0.13591201700810202, -0.11808473514096965, 0.11631188338354602];
pub const G2_TORSION_LAM: [f64; 8] = [0.0, 0.005968771829546074, -0.005968771829546074, 0.0, 0.0, -0.016841612209754046, 0.016841612209754046, 0.0];
pub const G2_TORSION_R: [f64; 8] = [0.0, 0.03856695788395996, -0.03856695788395996, 0.0, 0.0, 0.013750120343906196, -0.013750120343906196, 0.0];
pub const G2_TORSION_C: [f64; 8] = [-0.06538472308046298, 0.005638274857248763, 0.004274173556189167, -0.0638564871437075, -0.0036773805701473604, 0.06068033656222459, 0.041648307513465044, -0.003966649665178678];
pub const G2_TORSION_P: [f64; 8] = [0.17293315602028672, 0.01690514429794529, 0.09191631316743692, 0.14226796957330232, 0.016416126791765587, 0.11602459049653127, -0.004336674966214561, 0.1007191000837174];
pub const G2_TORSION_T: [f64; 8] = [0.0, 0.070633721122241, -0.070633721122241, 0.0, 0.0, 0.2539967521490717, -0.2539967521490717, 0.0];
pub const G2_NATURAL_GH: [f64; 8] = [-0.05444097723210267, -0.0417984515345783, -0.0417984515345783, -0.13042834983525917, 0.00884137869958433, 0.03683341868508472, 0.03683341868508472, 0.010083752761935526];
pub const G2_NATURAL_GV: [f64; 8] = [0.010173559477112008, 0.00018647303371858797, -0.014599151577105094, -0.03251680996583975, -0.01863264445829052, -0.012296000829513097, 0.056178466748677325, 0.0031914292833754186];
pub const G2_NATURAL_CH: [f64; 8] = [-0.06603375637078715, -0.003962988622155092, 0.008431113104230859, -0.0023621501602110995, -0.008048496678282162, -0.003982351899112368, 0.04229734080378922, 0.005634613814225177];
pub const G2_NATURAL_CV: [f64; 8] = [0.010165264947159778, -0.04011548325929552, -0.04011548325929552, 0.43959093394474624, -0.11238381539222067, -0.11408972453054982, -0.11408972453054982, 0.13719947848998484];
pub const G2_NATURAL_R_HH: [f64; 16] = [0.0, 0.02754266574346155, -0.02754266574346155, 0.0, 0.0, -0.17640573787871827, 0.17640573787871827, 0.0, 0.0, 0.18549462976249595, -0.18549462976249595, 0.0, 0.0, -0.02754266574346155, 0.02754266574346155, 0.0];
pub const G2_NATURAL_R_VH: [f64; 16] = [0.0, 0.0008214371897999631, -0.0008214371897999631, 0.0, 0.0, -0.010228588092175564, 0.010228588092175564, 0.0, 0.0, 0.00983170762206618, -0.00983170762206618, 0.0, 0.0, -0.0008214371897999631, 0.0008214371897999631, 0.0];
pub const G2_NATURAL_P_H: [f64; 16] = [-0.018075593702611973, 0.019838874130295243, 0.05130009741566093, -0.02209791355704648, 0.11577087252210294, -0.12706436124355724, -0.32856774366541186, 0.14153309570393793, -0.12173569518772069, 0.13361105442662116, 0.34549642600070446, -0.14882525649359354, 0.018075593702611973, -0.019838874130295243, -0.05130009741566093, 0.02209791355704648];
pub const G2_NATURAL_P_V: [f64; 16] = [-0.00993670464683343, 0.007354032662764297, -0.004993340382735204, 0.003043530772487286, 0.12373247776962362, -0.0915728820874777, 0.06217739178751143, -0.03789823860448101, -0.11893152151813746, 0.08801975352617111, -0.059764840586854544, 0.036427745256022694, 0.00993670464683343, -0.007354032662764297, 0.004993340382735204, -0.003043530772487286];
pub const G2_NATURAL_S_H: [f64; 16] = [0.0, 5.258741700032764e-05, -5.258741700032764e-05, 0.0, 0.0, -0.00033681279021733344, 0.00033681279021733344, 0.0, 0.0, 0.0003541662792374213, -0.0003541662792374213, 0.0, 0.0, -5.258741700032764e-05, 5.258741700032764e-05, 0.0];
pub const G2_NATURAL_S_V: [f64; 16] = [0.0, 0.05210365954712924, -0.05210365954712924, 0.0, 0.0, -0.6487980800240118, 0.6487980800240118, 0.0, 0.0, 0.6236240007976748, -0.6236240007976748, 0.0, 0.0, -0.05210365954712924, 0.05210365954712924, 0.0];
pub const G2_H_SCALAR: f64 = 0.0;
pub const G2_V_SCALAR: f64 = 0.0;
pub const G2_DET_H: f64 = 0.8551993656462517;
pub const G2_DET_V: f64 = 0.8460723288791672;

pub const POINT3: ([f64; 3], [f64; 3]) = ([0.3, -0.2, 0.5], [0.7, 0.9, -0.6]);
pub const G3_H_SCALAR: f64 = 0.13780218217466;
pub const G3_V_SCALAR: f64 = -0.0210597622474477;
pub const G3_DET_H: f64 = 1.070954836451011;
pub const G3_DET_V: f64 = 1.0713800728302763;
