/** Linked highlighting: one hovered entity lights up every connected view. */

import type { CompositionMeta } from "./types.js";

export interface HighlightState {
  /** compositions covered by the hovered entity */
  compositions: Set<string>;
  /** matrix/projection entity ids (compositions, or group keys when grouped) */
  entities: Set<string>;
  composerBars: Set<string>;
  typeChips: Set<string>;
}

export const EMPTY_HIGHLIGHT: HighlightState = {
  compositions: new Set(),
  entities: new Set(),
  composerBars: new Set(),
  typeChips: new Set(),
};

export interface HighlightContext {
  records: Map<string, CompositionMeta>;
  /** group key -> member composition ids, when the layout is grouped */
  groups: Record<string, string[]> | null;
  /** the current selection, used to scope composer/type hovers */
  selection: string[];
}

/**
 * Resolve a hovered id (projection circle, matrix row, table row, composer
 * bar, or type chip) to the set of ids each view must highlight. The mapping
 * is symmetric: hovering any view of an entity highlights the same sets.
 */
export function computeHighlight(
  hovered: string | null,
  context: HighlightContext,
): HighlightState {
  if (hovered === null) return EMPTY_HIGHLIGHT;
  const members = resolveMembers(hovered, context);
  if (members.length === 0) return EMPTY_HIGHLIGHT;

  const compositions = new Set(members);
  const composerBars = new Set<string>();
  const typeChips = new Set<string>();
  for (const id of members) {
    const record = context.records.get(id);
    if (record) {
      composerBars.add(record.composer_id);
      typeChips.add(record.composition_type);
    }
  }
  const entities = new Set<string>();
  if (context.groups) {
    for (const [key, groupMembers] of Object.entries(context.groups)) {
      if (groupMembers.some((id) => compositions.has(id))) entities.add(key);
    }
  } else {
    for (const id of members) entities.add(id);
  }
  return { compositions, entities, composerBars, typeChips };
}

function resolveMembers(
  hovered: string,
  { records, groups, selection }: HighlightContext,
): string[] {
  if (records.has(hovered)) return [hovered];
  if (groups && hovered in groups) return groups[hovered];
  const inSelection = selection.filter((id) => records.has(id));
  const byComposer = inSelection.filter(
    (id) => records.get(id)!.composer_id === hovered,
  );
  if (byComposer.length > 0) return byComposer;
  return inSelection.filter(
    (id) => records.get(id)!.composition_type === hovered,
  );
}
