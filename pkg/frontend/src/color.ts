/** Color scales: epoch gradient, heatmap ramp, categorical type colors. */

type Rgb = [number, number, number];

/** Anchor color per epoch, placed at a representative midyear. Composer
 * colors interpolate between anchors so transitions across boundary years
 * stay smooth instead of snapping. */
export const EPOCH_ANCHORS: { epoch: string; year: number; color: Rgb }[] = [
  { epoch: "baroque", year: 1700, color: [66, 105, 208] },
  { epoch: "classic", year: 1785, color: [60, 169, 81] },
  { epoch: "romantic", year: 1865, color: [239, 177, 24] },
  { epoch: "modern", year: 1935, color: [255, 114, 92] },
];

export const UNKNOWN_COLOR = "rgb(140,140,140)";

function mix(a: Rgb, b: Rgb, t: number): Rgb {
  return [
    Math.round(a[0] + (b[0] - a[0]) * t),
    Math.round(a[1] + (b[1] - a[1]) * t),
    Math.round(a[2] + (b[2] - a[2]) * t),
  ];
}

function css([r, g, b]: Rgb): string {
  return `rgb(${r},${g},${b})`;
}

/** Smooth epoch color for a lifespan midyear (clamped outside the anchors). */
export function epochColorByYear(midyear: number): string {
  const anchors = EPOCH_ANCHORS;
  if (midyear <= anchors[0].year) return css(anchors[0].color);
  for (let i = 0; i < anchors.length - 1; i++) {
    const a = anchors[i];
    const b = anchors[i + 1];
    if (midyear <= b.year) {
      return css(mix(a.color, b.color, (midyear - a.year) / (b.year - a.year)));
    }
  }
  return css(anchors[anchors.length - 1].color);
}

/** Flat anchor color for an epoch name; unknown epochs are gray. */
export function epochColor(epoch: string): string {
  const anchor = EPOCH_ANCHORS.find((a) => a.epoch === epoch);
  return anchor ? css(anchor.color) : UNKNOWN_COLOR;
}

const HEAT_STOPS: Rgb[] = [
  [68, 1, 84], // purple end = low values
  [59, 82, 139],
  [33, 145, 140],
  [94, 201, 98],
  [253, 231, 37], // yellow end = high values
];

/** Purple-to-yellow ramp over [0, 1] for the feature-matrix heatmap. */
export function heatColor(t: number): string {
  const clamped = Math.min(1, Math.max(0, t));
  const scaled = clamped * (HEAT_STOPS.length - 1);
  const index = Math.min(HEAT_STOPS.length - 2, Math.floor(scaled));
  return css(mix(HEAT_STOPS[index], HEAT_STOPS[index + 1], scaled - index));
}

/** Stable categorical color for a composition type (golden-angle hues). */
export function typeColor(type: string, taxonomy: string[]): string {
  const index = taxonomy.indexOf(type);
  if (index < 0) return UNKNOWN_COLOR;
  const hue = (index * 137.508) % 360;
  return `hsl(${hue.toFixed(1)},62%,52%)`;
}
